//! Graph products of concrete vertex groups.
//!
//! An element is a sequence of syllables `(vertex, nontrivial element)`.
//! Syllables at adjacent vertices commute; neighbouring syllables at the same
//! vertex merge. A sequence is reduced when no chain of commuting shuffles
//! brings two syllables at the same vertex next to each other, and the stored
//! form is the least reduced shuffle under the sorted vertex order.

mod gamma_prime;
mod subgroup;

pub use gamma_prime::{
    construct_gamma_prime, CosetAction, GammaPrimeConstruction, GammaPrimeDescriptor,
    HomomorphismReport, InjectivityReport, Origin,
};
pub use subgroup::FiniteIndexSubgroupSpec;

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::free_group::{FreeWord, WordError};
use crate::graphs::{GraphDocument, GraphError, Labels, SimpleGraph};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum GpError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("unrecognised vertex group label {0:?} (expected F<rank>, Z or Z/<n>)")]
    UnknownLabel(String),
    #[error("vertex {0:?} has no group label")]
    MissingLabel(String),
    #[error("identity syllable at vertex {0:?}")]
    IdentitySyllable(String),
    #[error("element {element:?} does not lie in the group at vertex {vertex:?}")]
    NotInGroup { vertex: String, element: String },
    #[error("elements belong to different graph products")]
    ProductMismatch,
    #[error("quotient permutations do not act transitively on [{0}]")]
    NotTransitive(usize),
    #[error("quotient: {0}")]
    Quotient(String),
    #[error("vertex {vertex:?} is labeled {label}, expected a free group of rank {rank}")]
    LabelMismatch { vertex: String, label: String, rank: usize },
    #[error("copied vertex name {0:?} collides with an existing vertex")]
    NameCollision(String),
    #[error("malformed input: {0}")]
    Parse(String),
}

/// The group sitting at a vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VertexGroupSpec {
    Free { rank: usize },
    Integers,
    Cyclic { modulus: u64 },
    /// Finite-index subgroup of a free group; elements are ambient words.
    Subgroup(Arc<FiniteIndexSubgroupSpec>),
}

/// A vertex group element.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Word(FreeWord),
    Int(i64),
    Residue(u64),
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Word(w) => w.fmt(f),
            GroupElement::Int(n) => n.fmt(f),
            GroupElement::Residue(r) => r.fmt(f),
        }
    }
}

impl VertexGroupSpec {
    /// Parses `F<rank>`, `Z`, `Z/<n>` or `Z<n>`.
    pub fn parse_label(label: &str) -> Result<Self, GpError> {
        let bad = || GpError::UnknownLabel(label.to_string());
        let t = label.trim();
        if let Some(rank) = t.strip_prefix('F') {
            let rank: usize = rank.parse().map_err(|_| bad())?;
            if rank == 0 || rank > crate::free_group::MAX_RANK {
                return Err(bad());
            }
            return Ok(VertexGroupSpec::Free { rank });
        }
        if t == "Z" {
            return Ok(VertexGroupSpec::Integers);
        }
        if let Some(rest) = t.strip_prefix('Z') {
            let n: u64 = rest.trim_start_matches('/').parse().map_err(|_| bad())?;
            if n < 2 {
                return Err(bad());
            }
            return Ok(VertexGroupSpec::Cyclic { modulus: n });
        }
        Err(bad())
    }

    /// Isomorphism-type label; a subgroup reports its free rank.
    pub fn label(&self) -> String {
        match self {
            VertexGroupSpec::Free { rank } => format!("F{rank}"),
            VertexGroupSpec::Integers => "Z".into(),
            VertexGroupSpec::Cyclic { modulus } => format!("Z/{modulus}"),
            VertexGroupSpec::Subgroup(h) => format!("F{}", h.free_rank()),
        }
    }

    pub fn identity(&self) -> GroupElement {
        match self {
            VertexGroupSpec::Free { .. } | VertexGroupSpec::Subgroup(_) => GroupElement::Word(FreeWord::identity()),
            VertexGroupSpec::Integers => GroupElement::Int(0),
            VertexGroupSpec::Cyclic { .. } => GroupElement::Residue(0),
        }
    }

    pub fn is_identity(&self, x: &GroupElement) -> bool {
        *x == self.identity()
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        match (self, x) {
            (VertexGroupSpec::Free { rank }, GroupElement::Word(w)) => w.rank_used() <= *rank,
            (VertexGroupSpec::Subgroup(h), GroupElement::Word(w)) => {
                w.rank_used() <= h.ambient_rank() && h.contains(w)
            }
            (VertexGroupSpec::Integers, GroupElement::Int(_)) => true,
            (VertexGroupSpec::Cyclic { modulus }, GroupElement::Residue(r)) => r < modulus,
            _ => false,
        }
    }

    /// Group law. Both arguments must belong to this group.
    pub fn multiply(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        match (self, x, y) {
            (_, GroupElement::Word(a), GroupElement::Word(b)) => GroupElement::Word(a.multiply(b)),
            (_, GroupElement::Int(a), GroupElement::Int(b)) => GroupElement::Int(a + b),
            (VertexGroupSpec::Cyclic { modulus }, GroupElement::Residue(a), GroupElement::Residue(b)) => {
                GroupElement::Residue((a + b) % modulus)
            }
            _ => panic!("element kinds do not match vertex group {self:?}"),
        }
    }

    pub fn inverse(&self, x: &GroupElement) -> GroupElement {
        match (self, x) {
            (_, GroupElement::Word(w)) => GroupElement::Word(w.inverse()),
            (_, GroupElement::Int(n)) => GroupElement::Int(-n),
            (VertexGroupSpec::Cyclic { modulus }, GroupElement::Residue(r)) => {
                GroupElement::Residue((modulus - r) % modulus)
            }
            _ => panic!("element kind does not match vertex group {self:?}"),
        }
    }

    /// Standard generators together with their inverses, deduplicated.
    pub fn generators(&self) -> Vec<GroupElement> {
        let mut out: Vec<GroupElement> = match self {
            VertexGroupSpec::Free { rank } => (0..*rank)
                .flat_map(|g| {
                    let w = FreeWord::generator(g);
                    [GroupElement::Word(w.inverse()), GroupElement::Word(w)]
                })
                .collect(),
            VertexGroupSpec::Subgroup(h) => h
                .schreier_generators()
                .iter()
                .flat_map(|w| [GroupElement::Word(w.clone()), GroupElement::Word(w.inverse())])
                .collect(),
            VertexGroupSpec::Integers => vec![GroupElement::Int(1), GroupElement::Int(-1)],
            VertexGroupSpec::Cyclic { modulus } => {
                vec![GroupElement::Residue(1), GroupElement::Residue(modulus - 1)]
            }
        };
        out.sort();
        out.dedup();
        out
    }

    pub fn parse_element(&self, text: &str) -> Result<GroupElement, GpError> {
        let bad = || GpError::Parse(format!("cannot read {text:?} as an element of {}", self.label()));
        Ok(match self {
            VertexGroupSpec::Free { rank } => GroupElement::Word(FreeWord::parse(text, *rank)?),
            VertexGroupSpec::Subgroup(h) => GroupElement::Word(FreeWord::parse(text, h.ambient_rank())?),
            VertexGroupSpec::Integers => GroupElement::Int(text.trim().parse().map_err(|_| bad())?),
            VertexGroupSpec::Cyclic { modulus } => {
                let n: i64 = text.trim().parse().map_err(|_| bad())?;
                GroupElement::Residue(n.rem_euclid(*modulus as i64) as u64)
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Syllable {
    pub vertex: usize,
    pub element: GroupElement,
}

/// JSON form of a syllable: `{"vertex":"u","element":"aB"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyllableDoc {
    pub vertex: String,
    pub element: String,
}

/// A simple graph with a group at every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphProduct {
    graph: Arc<SimpleGraph>,
    groups: Vec<VertexGroupSpec>,
}

impl GraphProduct {
    pub fn new(graph: Arc<SimpleGraph>, groups: BTreeMap<String, VertexGroupSpec>) -> Result<Self, GpError> {
        for v in groups.keys() {
            graph.index_of(v)?;
        }
        let groups = graph
            .vertices()
            .iter()
            .map(|v| groups.get(v).cloned().ok_or_else(|| GpError::MissingLabel(v.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GraphProduct { graph, groups })
    }

    pub fn from_labels(graph: Arc<SimpleGraph>, labels: &Labels) -> Result<Self, GpError> {
        let groups = labels
            .iter()
            .map(|(v, l)| Ok((v.clone(), VertexGroupSpec::parse_label(l)?)))
            .collect::<Result<BTreeMap<_, _>, GpError>>()?;
        Self::new(graph, groups)
    }

    /// Every vertex labeled with the same group.
    pub fn uniform(graph: Arc<SimpleGraph>, group: VertexGroupSpec) -> Self {
        let groups = vec![group; graph.vertex_count()];
        GraphProduct { graph, groups }
    }

    pub fn graph(&self) -> &Arc<SimpleGraph> {
        &self.graph
    }

    pub fn group(&self, vertex: usize) -> &VertexGroupSpec {
        &self.groups[vertex]
    }

    pub fn labels(&self) -> Labels {
        self.graph
            .vertices()
            .iter()
            .zip(&self.groups)
            .map(|(v, g)| (v.clone(), g.label()))
            .collect()
    }

    pub fn syllable(&self, vertex: &str, element: &str) -> Result<Syllable, GpError> {
        let v = self.graph.index_of(vertex)?;
        Ok(Syllable {
            vertex: v,
            element: self.groups[v].parse_element(element)?,
        })
    }

    pub fn syllable_from_doc(&self, doc: &SyllableDoc) -> Result<Syllable, GpError> {
        self.syllable(&doc.vertex, &doc.element)
    }

    pub fn syllable_doc(&self, s: &Syllable) -> SyllableDoc {
        SyllableDoc {
            vertex: self.graph.name(s.vertex).to_string(),
            element: s.element.to_string(),
        }
    }

    fn check_syllable(&self, s: &Syllable) -> Result<(), GpError> {
        if s.vertex >= self.groups.len() {
            return Err(GpError::Graph(GraphError::UnknownVertex(format!("#{}", s.vertex))));
        }
        let g = &self.groups[s.vertex];
        let name = self.graph.name(s.vertex);
        if !g.contains(&s.element) {
            return Err(GpError::NotInGroup {
                vertex: name.to_string(),
                element: s.element.to_string(),
            });
        }
        if g.is_identity(&s.element) {
            return Err(GpError::IdentitySyllable(name.to_string()));
        }
        Ok(())
    }

    /// Single-syllable generators: for each vertex in order, its standard
    /// generators and inverses.
    pub fn generators(self: &Arc<Self>) -> Vec<GPElement> {
        (0..self.groups.len())
            .flat_map(|v| {
                self.groups[v].generators().into_iter().map(move |element| GPElement {
                    product: self.clone(),
                    syllables: vec![Syllable { vertex: v, element }],
                })
            })
            .collect()
    }
}

/// An element of a graph product in canonical reduced form.
#[derive(Debug, Clone)]
pub struct GPElement {
    product: Arc<GraphProduct>,
    syllables: Vec<Syllable>,
}

impl PartialEq for GPElement {
    fn eq(&self, other: &Self) -> bool {
        same_product(&self.product, &other.product) && self.syllables == other.syllables
    }
}

impl Eq for GPElement {}

fn same_product(a: &Arc<GraphProduct>, b: &Arc<GraphProduct>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl GPElement {
    pub fn identity(product: Arc<GraphProduct>) -> Self {
        GPElement {
            product,
            syllables: Vec::new(),
        }
    }

    pub fn product(&self) -> &Arc<GraphProduct> {
        &self.product
    }

    pub fn syllables(&self) -> &[Syllable] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    /// Number of syllables.
    pub fn syllable_length(&self) -> usize {
        self.syllables.len()
    }

    pub fn to_docs(&self) -> Vec<SyllableDoc> {
        self.syllables.iter().map(|s| self.product.syllable_doc(s)).collect()
    }

    pub fn multiply(&self, other: &GPElement) -> Result<GPElement, GpError> {
        gp_multiply(self, other)
    }

    pub fn inverse(&self) -> GPElement {
        let p = &self.product;
        let raw = self.syllables.iter().rev().map(|s| Syllable {
            vertex: s.vertex,
            element: p.groups[s.vertex].inverse(&s.element),
        });
        GPElement {
            syllables: canonical_order(&p.graph, reduce_syllables(p, raw)),
            product: p.clone(),
        }
    }
}

impl fmt::Display for GPElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for s in &self.syllables {
            write!(f, "[{}:{}]", self.product.graph.name(s.vertex), s.element)?;
        }
        Ok(())
    }
}

/// Appends syllables one at a time, merging with the last same-vertex
/// syllable that can be shuffled to the end. Identity merges are dropped.
fn reduce_syllables(p: &GraphProduct, raw: impl IntoIterator<Item = Syllable>) -> Vec<Syllable> {
    let mut out: Vec<Syllable> = Vec::new();
    for s in raw {
        let group = &p.groups[s.vertex];
        if group.is_identity(&s.element) {
            continue;
        }
        let mut merge_at = None;
        for pos in (0..out.len()).rev() {
            if out[pos].vertex == s.vertex {
                merge_at = Some(pos);
                break;
            }
            if !p.graph.adjacent_idx(out[pos].vertex, s.vertex) {
                break;
            }
        }
        match merge_at {
            Some(pos) => {
                let merged = group.multiply(&out[pos].element, &s.element);
                if group.is_identity(&merged) {
                    out.remove(pos);
                } else {
                    out[pos].element = merged;
                }
            }
            None => out.push(s),
        }
    }
    out
}

/// Least shuffle of a reduced sequence: repeatedly take the front-movable
/// syllable with the smallest vertex.
fn canonical_order(graph: &SimpleGraph, mut rest: Vec<Syllable>) -> Vec<Syllable> {
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for i in 0..rest.len() {
            let movable = rest[..i].iter().all(|t| graph.adjacent_idx(t.vertex, rest[i].vertex));
            if movable && best.is_none_or(|b| rest[i].vertex < rest[b].vertex) {
                best = Some(i);
            }
        }
        out.push(rest.remove(best.expect("front syllable is movable")));
    }
    out
}

/// Validates raw syllables and returns their canonical reduced form.
pub fn gp_normal_form(product: &Arc<GraphProduct>, raw: Vec<Syllable>) -> Result<GPElement, GpError> {
    for s in &raw {
        product.check_syllable(s)?;
    }
    Ok(GPElement {
        syllables: canonical_order(&product.graph, reduce_syllables(product, raw)),
        product: product.clone(),
    })
}

pub fn gp_multiply(x: &GPElement, y: &GPElement) -> Result<GPElement, GpError> {
    if !same_product(&x.product, &y.product) {
        return Err(GpError::ProductMismatch);
    }
    let raw = x.syllables.iter().chain(&y.syllables).cloned();
    Ok(GPElement {
        syllables: canonical_order(&x.product.graph, reduce_syllables(&x.product, raw)),
        product: x.product.clone(),
    })
}

/// Elements grouped by generator length (spheres of the Cayley graph).
#[derive(Debug, Clone)]
pub struct Ball {
    pub spheres: Vec<Vec<GPElement>>,
    /// False when the budget stopped the enumeration early.
    pub complete: bool,
}

impl Ball {
    pub fn len(&self) -> usize {
        self.spheres.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = &GPElement> {
        self.spheres.iter().flatten()
    }
}

/// Breadth-first enumeration of all elements of generator length `<= radius`.
pub fn enumerate_ball(product: &Arc<GraphProduct>, radius: usize, budget: &Budget) -> Ball {
    let gens = product.generators();
    let identity = GPElement::identity(product.clone());
    let mut seen: HashSet<Vec<Syllable>> = HashSet::new();
    seen.insert(Vec::new());
    let mut spheres = vec![vec![identity]];
    for r in 1..=radius {
        let mut next = Vec::new();
        for x in &spheres[r - 1] {
            for g in &gens {
                let y = gp_multiply(x, g).expect("same product");
                if seen.insert(y.syllables.clone()) {
                    next.push(y);
                    if budget.exhausted(seen.len()) {
                        spheres.push(next);
                        return Ball {
                            spheres,
                            complete: false,
                        };
                    }
                }
            }
        }
        spheres.push(next);
    }
    Ball {
        spheres,
        complete: true,
    }
}

/// JSON input for normal-form requests:
/// `{"graph":{...},"labels":{...},"syllables":[{"vertex":"u","element":"a"}]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductDescriptor {
    pub graph: GraphDocument,
    #[serde(default, skip_serializing_if = "Labels::is_empty")]
    pub labels: Labels,
    #[serde(default)]
    pub syllables: Vec<SyllableDoc>,
}

impl ProductDescriptor {
    /// Builds the product; top-level labels override labels inside `graph`.
    pub fn product(&self) -> Result<Arc<GraphProduct>, GpError> {
        let mut graph_doc = self.graph.clone();
        let mut labels = std::mem::take(&mut graph_doc.labels);
        labels.extend(self.labels.clone());
        let (graph, _) = graph_doc.into_graph()?;
        Ok(Arc::new(GraphProduct::from_labels(Arc::new(graph), &labels)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(adjacent: bool, label: &str) -> Arc<GraphProduct> {
        let edges: Vec<(&str, &str)> = if adjacent { vec![("u", "v")] } else { vec![] };
        let g = Arc::new(SimpleGraph::new(["u", "v"], edges).unwrap());
        Arc::new(GraphProduct::uniform(g, VertexGroupSpec::parse_label(label).unwrap()))
    }

    fn elem(p: &Arc<GraphProduct>, syl: &[(&str, &str)]) -> GPElement {
        let raw = syl.iter().map(|(v, e)| p.syllable(v, e).unwrap()).collect();
        gp_normal_form(p, raw).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let free = product(false, "F2");
        assert!(elem(&free, &[("u", "a"), ("u", "A")]).is_identity());

        let adj = product(true, "F2");
        assert_eq!(elem(&adj, &[("v", "b"), ("u", "a")]).to_string(), "[u:a][v:b]");
        assert_eq!(elem(&adj, &[("u", "a"), ("v", "b"), ("u", "a")]).to_string(), "[u:aa][v:b]");
        assert_eq!(elem(&free, &[("u", "a"), ("v", "b"), ("u", "a")]).to_string(), "[u:a][v:b][u:a]");
    }

    #[test]
    fn normal_form_rejects_malformed() {
        let p = product(false, "F2");
        let id = Syllable {
            vertex: 0,
            element: GroupElement::Word(FreeWord::identity()),
        };
        assert_eq!(gp_normal_form(&p, vec![id]).unwrap_err(), GpError::IdentitySyllable("u".into()));
        let wrong = Syllable {
            vertex: 0,
            element: GroupElement::Int(3),
        };
        assert!(matches!(gp_normal_form(&p, vec![wrong]), Err(GpError::NotInGroup { .. })));
        let out = Syllable {
            vertex: 7,
            element: GroupElement::Int(3),
        };
        assert!(matches!(gp_normal_form(&p, vec![out]), Err(GpError::Graph(_))));
        assert!(p.syllable("w", "a").is_err());
    }

    #[test]
    fn multiply_examples() {
        let p = product(false, "F2");
        let x = elem(&p, &[("u", "ab"), ("v", "bA")]);
        assert!(x.multiply(&x.inverse()).unwrap().is_identity());
        let e = GPElement::identity(p.clone());
        assert_eq!(e.multiply(&x).unwrap(), x);
        let x = elem(&p, &[("u", "a"), ("v", "b")]);
        let y = elem(&p, &[("v", "B"), ("u", "a")]);
        assert_eq!(x.multiply(&y).unwrap().to_string(), "[u:aa]");
        let other = product(true, "F2");
        assert_eq!(
            x.multiply(&GPElement::identity(other)).unwrap_err(),
            GpError::ProductMismatch
        );
    }

    #[test]
    fn cyclic_and_integer_groups() {
        let g = Arc::new(SimpleGraph::new(["u", "v"], Vec::<(&str, &str)>::new()).unwrap());
        let mut labels = Labels::new();
        labels.insert("u".into(), "Z/3".into());
        labels.insert("v".into(), "Z".into());
        let p = Arc::new(GraphProduct::from_labels(g, &labels).unwrap());
        let x = elem(&p, &[("u", "1"), ("u", "2")]);
        assert!(x.is_identity());
        let y = elem(&p, &[("v", "2"), ("u", "2"), ("u", "2"), ("v", "-5")]);
        assert_eq!(y.to_string(), "[v:2][u:1][v:-5]");
        assert_eq!(p.group(0).generators().len(), 2);
        let z2 = VertexGroupSpec::parse_label("Z2").unwrap();
        assert_eq!(z2.generators(), vec![GroupElement::Residue(1)]);
    }

    #[test]
    fn labels_parse() {
        assert_eq!(VertexGroupSpec::parse_label("F3").unwrap(), VertexGroupSpec::Free { rank: 3 });
        assert_eq!(VertexGroupSpec::parse_label("Z/5").unwrap(), VertexGroupSpec::Cyclic { modulus: 5 });
        assert!(VertexGroupSpec::parse_label("F0").is_err());
        assert!(VertexGroupSpec::parse_label("Z/1").is_err());
        assert!(VertexGroupSpec::parse_label("Q").is_err());
    }

    #[test]
    fn ball_sizes_free_product() {
        // Z * Z: ball of radius r in a free group of rank 2 has 2*3^r - 1 elements
        let p = product(false, "Z");
        let ball = enumerate_ball(&p, 4, &Budget::default());
        assert!(ball.complete);
        assert_eq!(ball.len(), 2 * 81 - 1);
        // Z x Z: (2r+1)^2 - counting L1 ball: 2r^2 + 2r + 1
        let p = product(true, "Z");
        assert_eq!(enumerate_ball(&p, 4, &Budget::default()).len(), 41);
        let partial = enumerate_ball(&p, 4, &Budget::new(5));
        assert!(!partial.complete);
    }
}
