//! Right-angled Coxeter groups.
//!
//! The right-angled Coxeter group of a simple graph has one involution per
//! vertex, and two generators commute exactly when their vertices are
//! adjacent. A word is reduced when it has no subword `s v s` in which `s` is
//! adjacent to every letter of `v`. Reduced words of the same element differ
//! by swaps of adjacent commuting letters, so an element is stored as the
//! lexicographically least of its reduced words (ShortLex under the sorted
//! vertex order).

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::budget::Budget;
use crate::graphs::{GraphError, SimpleGraph, VertexSet};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum CoxeterError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("words live over different graphs")]
    GraphMismatch,
    #[error("enumeration stopped after {partial} elements")]
    BudgetExceeded { partial: usize },
}

/// A word in the vertex alphabet of a graph.
#[derive(Debug, Clone)]
pub struct CoxeterWord {
    graph: Arc<SimpleGraph>,
    letters: Vec<usize>,
}

impl CoxeterWord {
    pub fn new<S: AsRef<str>>(graph: Arc<SimpleGraph>, letters: &[S]) -> Result<Self, CoxeterError> {
        let letters = letters
            .iter()
            .map(|s| graph.index_of(s.as_ref()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CoxeterWord { graph, letters })
    }

    /// Parses whitespace-separated vertex names.
    pub fn parse(graph: Arc<SimpleGraph>, text: &str) -> Result<Self, CoxeterError> {
        let letters: Vec<&str> = text.split_whitespace().collect();
        Self::new(graph, &letters)
    }

    /// Word from vertex indices. Panics on an out-of-range index.
    pub fn from_indices(graph: Arc<SimpleGraph>, letters: Vec<usize>) -> Self {
        assert!(letters.iter().all(|&i| i < graph.vertex_count()));
        CoxeterWord { graph, letters }
    }

    pub fn graph(&self) -> &Arc<SimpleGraph> {
        &self.graph
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn names(&self) -> Vec<String> {
        self.letters.iter().map(|&i| self.graph.name(i).to_string()).collect()
    }
}

impl PartialEq for CoxeterWord {
    fn eq(&self, other: &Self) -> bool {
        same_graph(&self.graph, &other.graph) && self.letters == other.letters
    }
}

impl Eq for CoxeterWord {}

impl fmt::Display for CoxeterWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        write!(f, "{}", self.names().join(" "))
    }
}

fn same_graph(a: &Arc<SimpleGraph>, b: &Arc<SimpleGraph>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// An element of the group, held as its canonical reduced word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoxeterElement {
    normal_form: CoxeterWord,
}

impl CoxeterElement {
    pub fn identity(graph: Arc<SimpleGraph>) -> Self {
        CoxeterElement {
            normal_form: CoxeterWord {
                graph,
                letters: Vec::new(),
            },
        }
    }

    pub fn generator(graph: Arc<SimpleGraph>, s: &str) -> Result<Self, CoxeterError> {
        Ok(normal_form(&CoxeterWord::new(graph, &[s])?))
    }

    pub fn word(&self) -> &CoxeterWord {
        &self.normal_form
    }

    /// Word length `|g|`.
    pub fn length(&self) -> usize {
        self.normal_form.len()
    }

    pub fn is_identity(&self) -> bool {
        self.normal_form.is_empty()
    }

    pub fn multiply(&self, other: &CoxeterElement) -> Result<CoxeterElement, CoxeterError> {
        if !same_graph(&self.normal_form.graph, &other.normal_form.graph) {
            return Err(CoxeterError::GraphMismatch);
        }
        let mut letters = self.normal_form.letters.clone();
        letters.extend_from_slice(&other.normal_form.letters);
        Ok(normal_form(&CoxeterWord {
            graph: self.normal_form.graph.clone(),
            letters,
        }))
    }

    pub fn inverse(&self) -> CoxeterElement {
        let mut letters = self.normal_form.letters.clone();
        letters.reverse();
        normal_form(&CoxeterWord {
            graph: self.normal_form.graph.clone(),
            letters,
        })
    }

    /// True when every letter of the normal form lies in `set`.
    pub fn supported_in(&self, set: &VertexSet) -> bool {
        self.normal_form.names().iter().all(|n| set.contains(n))
    }
}

impl fmt::Display for CoxeterElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.normal_form.fmt(f)
    }
}

/// No subword `s v s` with `s` adjacent to every letter of `v` (including
/// `v` empty).
pub fn is_reduced(w: &CoxeterWord) -> bool {
    let g = &*w.graph;
    let l = &w.letters;
    for i in 0..l.len() {
        for j in i + 1..l.len() {
            if l[j] == l[i] {
                return false;
            }
            if !g.adjacent_idx(l[i], l[j]) {
                break;
            }
        }
    }
    true
}

/// Deletes cancelling pairs until the word is reduced.
///
/// Letters are appended one at a time; a new letter `s` cancels against the
/// last occurrence of `s` when everything after that occurrence commutes with
/// `s`, otherwise it is appended. The prefix stays reduced throughout.
pub(crate) fn reduce_indices(graph: &SimpleGraph, letters: &[usize]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::with_capacity(letters.len());
    for &s in letters {
        let mut cancel_at = None;
        for (pos, &t) in out.iter().enumerate().rev() {
            if t == s {
                cancel_at = Some(pos);
                break;
            }
            if !graph.adjacent_idx(s, t) {
                break;
            }
        }
        match cancel_at {
            Some(pos) => {
                out.remove(pos);
            }
            None => out.push(s),
        }
    }
    out
}

/// Lexicographically least rearrangement of a reduced word by commuting
/// swaps: repeatedly emit the smallest letter that can be shuffled to the
/// front.
pub(crate) fn lex_least_indices(graph: &SimpleGraph, reduced: &[usize]) -> Vec<usize> {
    let mut rest: Vec<usize> = reduced.to_vec();
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for i in 0..rest.len() {
            let movable = rest[..i].iter().all(|&t| graph.adjacent_idx(t, rest[i]));
            if movable && best.is_none_or(|b| rest[i] < rest[b]) {
                best = Some(i);
            }
        }
        let i = best.expect("first letter is always movable");
        out.push(rest.remove(i));
    }
    out
}

pub fn normal_form(w: &CoxeterWord) -> CoxeterElement {
    let reduced = reduce_indices(&w.graph, &w.letters);
    CoxeterElement {
        normal_form: CoxeterWord {
            graph: w.graph.clone(),
            letters: lex_least_indices(&w.graph, &reduced),
        },
    }
}

pub fn equal(w1: &CoxeterWord, w2: &CoxeterWord) -> Result<bool, CoxeterError> {
    if !same_graph(&w1.graph, &w2.graph) {
        return Err(CoxeterError::GraphMismatch);
    }
    Ok(normal_form(w1) == normal_form(w2))
}

/// Generators that shorten an element when multiplied on the left or right.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct DescentSets {
    pub left: VertexSet,
    pub right: VertexSet,
}

impl DescentSets {
    /// Membership in `L_s = {g : |sg| = 1 + |g|}`.
    pub fn in_l(&self, s: &str) -> bool {
        !self.left.contains(s)
    }

    /// Membership in the set of `g` with `|s g| = 1 + |g| = |g t|` for all
    /// `s ∈ left_set`, `t ∈ right_set`.
    pub fn in_j(&self, left_set: &VertexSet, right_set: &VertexSet) -> bool {
        left_set.iter().all(|s| !self.left.contains(s)) && right_set.iter().all(|t| !self.right.contains(t))
    }
}

pub fn descent_sets(g: &CoxeterElement) -> DescentSets {
    let w = &g.normal_form;
    let graph = &*w.graph;
    let len = w.len();
    let mut left = VertexSet::new();
    let mut right = VertexSet::new();
    for s in 0..graph.vertex_count() {
        let mut sw = Vec::with_capacity(len + 1);
        sw.push(s);
        sw.extend_from_slice(&w.letters);
        if reduce_indices(graph, &sw).len() < len {
            left.insert(graph.name(s));
        }
        let mut ws = w.letters.clone();
        ws.push(s);
        if reduce_indices(graph, &ws).len() < len {
            right.insert(graph.name(s));
        }
    }
    DescentSets { left, right }
}

/// All elements with `|g| <= max_length`, grouped by length, each group sorted
/// by normal form.
pub fn enumerate_elements(
    graph: &Arc<SimpleGraph>,
    max_length: usize,
    budget: &Budget,
) -> Result<Vec<Vec<CoxeterElement>>, CoxeterError> {
    let n = graph.vertex_count();
    let mut layers: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
    let mut total = 1usize;
    for len in 1..=max_length {
        let mut next: HashSet<Vec<usize>> = HashSet::new();
        for w in &layers[len - 1] {
            for s in 0..n {
                let mut ws = w.clone();
                ws.push(s);
                let reduced = reduce_indices(graph, &ws);
                if reduced.len() == len {
                    next.insert(lex_least_indices(graph, &reduced));
                    if budget.exhausted(total + next.len()) {
                        return Err(CoxeterError::BudgetExceeded {
                            partial: total + next.len(),
                        });
                    }
                }
            }
        }
        if next.is_empty() {
            // finite group exhausted
            break;
        }
        total += next.len();
        let mut layer: Vec<Vec<usize>> = next.into_iter().collect();
        layer.sort();
        layers.push(layer);
    }
    Ok(layers
        .into_iter()
        .map(|layer| {
            layer
                .into_iter()
                .map(|letters| CoxeterElement {
                    normal_form: CoxeterWord {
                        graph: graph.clone(),
                        letters,
                    },
                })
                .collect()
        })
        .collect())
}
