use std::collections::BTreeMap;

use super::{GraphError, Labels, SimpleGraph};

pub const DEFAULT_ISO_CAP: usize = 12;

#[derive(Debug, Clone, Copy)]
pub struct IsoOptions {
    /// Largest vertex count accepted by the exhaustive search.
    pub max_vertices: usize,
}

impl Default for IsoOptions {
    fn default() -> Self {
        IsoOptions {
            max_vertices: DEFAULT_ISO_CAP,
        }
    }
}

/// Searches for a label-preserving isomorphism `g1 -> g2`.
///
/// The search assigns the vertices of `g1` in sorted order and tries images in
/// sorted order, so the returned bijection is the lexicographically least one.
/// Missing labels compare equal to each other.
pub fn graphs_isomorphic(
    g1: &SimpleGraph,
    g2: &SimpleGraph,
    labels1: Option<&Labels>,
    labels2: Option<&Labels>,
    opts: IsoOptions,
) -> Result<Option<BTreeMap<String, String>>, GraphError> {
    for g in [g1, g2] {
        if g.vertex_count() > opts.max_vertices {
            return Err(GraphError::TooLarge {
                vertices: g.vertex_count(),
                cap: opts.max_vertices,
            });
        }
    }
    let n = g1.vertex_count();
    if n != g2.vertex_count() || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    let label_of = |labels: Option<&Labels>, g: &SimpleGraph, i: usize| -> Option<String> {
        labels.and_then(|l| l.get(g.name(i)).cloned())
    };
    let l1: Vec<Option<String>> = (0..n).map(|i| label_of(labels1, g1, i)).collect();
    let l2: Vec<Option<String>> = (0..n).map(|i| label_of(labels2, g2, i)).collect();
    let d1: Vec<usize> = (0..n).map(|i| g1.degree_idx(i)).collect();
    let d2: Vec<usize> = (0..n).map(|i| g2.degree_idx(i)).collect();

    let mut profile1: Vec<(usize, &Option<String>)> = d1.iter().copied().zip(&l1).collect();
    let mut profile2: Vec<(usize, &Option<String>)> = d2.iter().copied().zip(&l2).collect();
    profile1.sort();
    profile2.sort();
    if profile1 != profile2 {
        return Ok(None);
    }

    let mut search = Search {
        g1,
        g2,
        l1: &l1,
        l2: &l2,
        d1: &d1,
        d2: &d2,
        image: vec![usize::MAX; n],
        used: vec![false; n],
    };
    if search.extend(0) {
        let map = (0..n)
            .map(|i| (g1.name(i).to_string(), g2.name(search.image[i]).to_string()))
            .collect();
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

struct Search<'a> {
    g1: &'a SimpleGraph,
    g2: &'a SimpleGraph,
    l1: &'a [Option<String>],
    l2: &'a [Option<String>],
    d1: &'a [usize],
    d2: &'a [usize],
    image: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn extend(&mut self, v: usize) -> bool {
        let n = self.image.len();
        if v == n {
            return true;
        }
        for w in 0..n {
            if self.used[w] || self.d1[v] != self.d2[w] || self.l1[v] != self.l2[w] {
                continue;
            }
            let consistent =
                (0..v).all(|u| self.g1.adjacent_idx(u, v) == self.g2.adjacent_idx(self.image[u], w));
            if !consistent {
                continue;
            }
            self.image[v] = w;
            self.used[w] = true;
            if self.extend(v + 1) {
                return true;
            }
            self.used[w] = false;
        }
        self.image[v] = usize::MAX;
        false
    }
}
