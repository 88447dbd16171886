//! Finite simple graphs with the link/star calculus.
//!
//! Vertices are opaque strings kept in sorted order; every vertex also has a
//! dense index (its position in that order) which the algebraic modules use
//! internally. Set-valued results are [`VertexSet`]s and iterate sorted.

mod io;
mod iso;

pub use io::{parse_dot, GraphDocument};
pub use iso::{graphs_isomorphic, IsoOptions, DEFAULT_ISO_CAP};

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex not in graph: {0:?}")]
    UnknownVertex(String),
    #[error("self-loop on vertex {0:?}")]
    SelfLoop(String),
    #[error("duplicate edge {0:?} -- {1:?}")]
    DuplicateEdge(String, String),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("graph too large for exhaustive search: {vertices} vertices, cap {cap}")]
    TooLarge { vertices: usize, cap: usize },
    #[error("malformed graph input: {0}")]
    Parse(String),
}

/// A subset of the vertices of some graph, iterated in sorted order.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexSet(BTreeSet<String>);

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn contains(&self, v: &str) -> bool {
        self.0.contains(v)
    }

    pub fn insert(&mut self, v: impl Into<String>) -> bool {
        self.0.insert(v.into())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl<S: Into<String>> FromIterator<S> for VertexSet {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Self(iter.into_iter().map(Into::into).collect())
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A finite simple graph: symmetric, irreflexive adjacency on sorted string
/// vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimpleGraph {
    vertices: Vec<String>,
    adj: Vec<Vec<bool>>,
}

impl SimpleGraph {
    /// Builds a graph, rejecting duplicate vertices, unknown endpoints,
    /// self-loops and repeated edges.
    pub fn new<V, E, S>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = S>,
        E: IntoIterator<Item = (S, S)>,
        S: Into<String>,
    {
        let mut names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateVertex(w[0].clone()));
        }
        let n = names.len();
        let mut g = SimpleGraph {
            vertices: names,
            adj: vec![vec![false; n]; n],
        };
        for (a, b) in edges {
            let (a, b) = (a.into(), b.into());
            let i = g.index_of(&a)?;
            let j = g.index_of(&b)?;
            if i == j {
                return Err(GraphError::SelfLoop(a));
            }
            if g.adj[i][j] {
                return Err(GraphError::DuplicateEdge(a, b));
            }
            g.adj[i][j] = true;
            g.adj[j][i] = true;
        }
        Ok(g)
    }

    /// Builds a graph from index pairs over already-sorted, distinct names.
    /// Repeated pairs are merged.
    pub(crate) fn from_indexed(vertices: Vec<String>, edges: &[(usize, usize)]) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        let n = vertices.len();
        let mut adj = vec![vec![false; n]; n];
        for &(i, j) in edges {
            debug_assert!(i != j);
            adj[i][j] = true;
            adj[j][i] = true;
        }
        SimpleGraph { vertices, adj }
    }

    /// Complete graph on the given vertices.
    pub fn complete<S: Into<String>>(vertices: impl IntoIterator<Item = S>) -> Self {
        let mut names: Vec<String> = vertices.into_iter().map(Into::into).collect();
        names.sort();
        names.dedup();
        let n = names.len();
        let adj = (0..n).map(|i| (0..n).map(|j| i != j).collect()).collect();
        SimpleGraph {
            vertices: names,
            adj,
        }
    }

    /// Cycle `1 - 2 - ... - n - 1` with vertices named by number.
    ///
    /// Panics for `n < 3`.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let edges: Vec<(String, String)> = (1..=n)
            .map(|i| (i.to_string(), (i % n + 1).to_string()))
            .collect();
        SimpleGraph::new(names, edges).expect("valid cycle")
    }

    /// Path `1 - 2 - ... - n`.
    pub fn path(n: usize) -> Self {
        let names: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let edges: Vec<(String, String)> =
            (1..n).map(|i| (i.to_string(), (i + 1).to_string())).collect();
        SimpleGraph::new(names, edges).expect("valid path")
    }

    /// The Petersen graph on vertices `0..=9`: outer 5-cycle 0-4, inner
    /// pentagram 5-9, spokes i -- i+5.
    pub fn petersen() -> Self {
        let names: Vec<String> = (0..10).map(|i| i.to_string()).collect();
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i.to_string(), ((i + 1) % 5).to_string()));
            edges.push(((i + 5).to_string(), ((i + 2) % 5 + 5).to_string()));
            edges.push((i.to_string(), (i + 5).to_string()));
        }
        SimpleGraph::new(names, edges).expect("valid petersen graph")
    }

    /// Disjoint union; vertex names must not collide.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> Result<SimpleGraph, GraphError> {
        let vertices = self.vertices.iter().chain(&other.vertices).cloned();
        let edges = self.edges().chain(other.edges()).map(|(a, b)| (a.to_string(), b.to_string()));
        let edges: Vec<_> = edges.collect();
        SimpleGraph::new(vertices, edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().count()
    }

    /// Vertex names in sorted order; position = vertex index.
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices.iter().cloned().collect()
    }

    pub fn name(&self, index: usize) -> &str {
        &self.vertices[index]
    }

    pub fn index_of(&self, v: &str) -> Result<usize, GraphError> {
        self.vertices
            .binary_search_by(|x| x.as_str().cmp(v))
            .map_err(|_| GraphError::UnknownVertex(v.to_string()))
    }

    pub fn contains(&self, v: &str) -> bool {
        self.index_of(v).is_ok()
    }

    /// Edges as sorted `(a, b)` pairs with `a < b`.
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        let n = self.vertices.len();
        (0..n).flat_map(move |i| {
            (i + 1..n)
                .filter(move |&j| self.adj[i][j])
                .map(move |j| (self.vertices[i].as_str(), self.vertices[j].as_str()))
        })
    }

    #[inline]
    pub fn adjacent_idx(&self, i: usize, j: usize) -> bool {
        self.adj[i][j]
    }

    pub fn adjacent(&self, a: &str, b: &str) -> Result<bool, GraphError> {
        Ok(self.adj[self.index_of(a)?][self.index_of(b)?])
    }

    pub fn degree_idx(&self, i: usize) -> usize {
        self.adj[i].iter().filter(|&&x| x).count()
    }

    pub(crate) fn neighbors_idx(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[i].iter().enumerate().filter(|(_, &x)| x).map(|(j, _)| j)
    }

    pub fn link(&self, s: &str) -> Result<VertexSet, GraphError> {
        let i = self.index_of(s)?;
        Ok(self.neighbors_idx(i).map(|j| self.vertices[j].clone()).collect())
    }

    /// `{s} ∪ link(s)`.
    pub fn star(&self, s: &str) -> Result<VertexSet, GraphError> {
        let mut st = self.link(s)?;
        st.insert(s);
        Ok(st)
    }

    /// Intersection of the links of the members of `set`; the empty set
    /// yields every vertex.
    pub fn link_of_set(&self, set: &VertexSet) -> Result<VertexSet, GraphError> {
        let members = set
            .iter()
            .map(|v| self.index_of(v))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.link_of_indices(&members).into_iter().map(|j| self.vertices[j].clone()).collect())
    }

    pub(crate) fn link_of_indices(&self, members: &[usize]) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&t| members.iter().all(|&u| self.adj[u][t]))
            .collect()
    }

    /// Checks `link(link s) = {s}` for every vertex. On failure the first
    /// offending vertex (in sorted order) is reported with `link(link s)`.
    pub fn is_rigid(&self) -> Rigidity {
        for s in 0..self.vertices.len() {
            let link: Vec<usize> = self.neighbors_idx(s).collect();
            let ll = self.link_of_indices(&link);
            if ll != [s] {
                return Rigidity {
                    rigid: false,
                    witness: Some(RigidityWitness {
                        vertex: self.vertices[s].clone(),
                        link_of_link: ll.into_iter().map(|j| self.vertices[j].clone()).collect(),
                    }),
                };
            }
        }
        Rigidity {
            rigid: true,
            witness: None,
        }
    }

    /// Subgraph spanned by `set`, with edges `E ∩ (set × set)`.
    pub fn induced_subgraph(&self, set: &VertexSet) -> Result<SimpleGraph, GraphError> {
        let idx = set
            .iter()
            .map(|v| self.index_of(v))
            .collect::<Result<Vec<_>, _>>()?;
        let names = idx.iter().map(|&i| self.vertices[i].clone()).collect();
        let adj = idx
            .iter()
            .map(|&i| idx.iter().map(|&j| self.adj[i][j]).collect())
            .collect();
        Ok(SimpleGraph {
            vertices: names,
            adj,
        })
    }

    /// Complement graph on the same vertex set.
    pub fn complement(&self) -> SimpleGraph {
        let n = self.vertices.len();
        let adj = (0..n)
            .map(|i| (0..n).map(|j| i != j && !self.adj[i][j]).collect())
            .collect();
        SimpleGraph {
            vertices: self.vertices.clone(),
            adj,
        }
    }
}

/// Outcome of [`SimpleGraph::is_rigid`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rigidity {
    pub rigid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<RigidityWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RigidityWitness {
    pub vertex: String,
    pub link_of_link: VertexSet,
}

/// Optional vertex labels; absent vertices are unlabeled.
pub type Labels = BTreeMap<String, String>;

#[cfg(test)]
mod tests {
    use super::*;

    fn set(items: &[&str]) -> VertexSet {
        items.iter().copied().collect()
    }

    #[test]
    fn link_examples() {
        let k3 = SimpleGraph::complete(["a", "b", "c"]);
        assert_eq!(k3.link("a").unwrap(), set(&["b", "c"]));
        let empty = SimpleGraph::new(["a", "b"], Vec::<(&str, &str)>::new()).unwrap();
        assert!(empty.link("a").unwrap().is_empty());
        let c5 = SimpleGraph::cycle(5);
        assert_eq!(c5.link("1").unwrap(), set(&["2", "5"]));
        assert_eq!(
            c5.link("9").unwrap_err(),
            GraphError::UnknownVertex("9".into())
        );
    }

    #[test]
    fn link_of_set_examples() {
        let c5 = SimpleGraph::cycle(5);
        assert_eq!(c5.link_of_set(&set(&["2", "5"])).unwrap(), set(&["1"]));
        assert_eq!(c5.link_of_set(&VertexSet::new()).unwrap(), c5.vertex_set());
        let k3 = SimpleGraph::complete(["a", "b", "c"]);
        assert_eq!(k3.link_of_set(&set(&["b", "c"])).unwrap(), set(&["a"]));
        assert!(c5.link_of_set(&set(&["x"])).is_err());
    }

    #[test]
    fn rigidity_examples() {
        for n in 1..6 {
            let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            assert!(SimpleGraph::complete(names).is_rigid().rigid, "K_{n}");
        }
        let path = SimpleGraph::new(["a", "b", "c"], [("a", "b"), ("b", "c")]).unwrap();
        let r = path.is_rigid();
        assert!(!r.rigid);
        let w = r.witness.unwrap();
        assert_eq!(w.vertex, "a");
        assert_eq!(w.link_of_link, set(&["a", "c"]));
        assert!(SimpleGraph::cycle(5).is_rigid().rigid);
        assert!(SimpleGraph::cycle(6).is_rigid().rigid);
        assert!(!SimpleGraph::cycle(4).is_rigid().rigid);
        assert!(SimpleGraph::petersen().is_rigid().rigid);
    }

    #[test]
    fn induced_subgraph_examples() {
        let c5 = SimpleGraph::cycle(5);
        let e = c5.induced_subgraph(&set(&["1", "2"])).unwrap();
        assert_eq!(e.vertex_count(), 2);
        assert_eq!(e.edge_count(), 1);
        assert_eq!(c5.induced_subgraph(&VertexSet::new()).unwrap().vertex_count(), 0);
        let nonadj = c5.induced_subgraph(&set(&["1", "3"])).unwrap();
        assert_eq!(nonadj.edge_count(), 0);
        assert_eq!(c5.induced_subgraph(&c5.vertex_set()).unwrap(), c5);
        assert!(c5.induced_subgraph(&set(&["1", "zz"])).is_err());
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert_eq!(
            SimpleGraph::new(["a"], [("a", "a")]).unwrap_err(),
            GraphError::SelfLoop("a".into())
        );
        assert!(matches!(
            SimpleGraph::new(["a", "b"], [("a", "b"), ("b", "a")]),
            Err(GraphError::DuplicateEdge(..))
        ));
        assert!(matches!(
            SimpleGraph::new(["a"], [("a", "b")]),
            Err(GraphError::UnknownVertex(_))
        ));
        assert!(matches!(
            SimpleGraph::new(["a", "a"], Vec::<(&str, &str)>::new()),
            Err(GraphError::DuplicateVertex(_))
        ));
    }

    #[test]
    fn petersen_is_cubic() {
        let p = SimpleGraph::petersen();
        assert_eq!(p.edge_count(), 15);
        assert!((0..10).all(|i| p.degree_idx(i) == 3));
    }
}
