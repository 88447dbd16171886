//! Label-level invariants for graph products over rigid graphs.
//!
//! Vertex algebras are represented only by class labels, and two labels are
//! correlated exactly when they are equal. A tensor product of labeled
//! factors is represented by the multiset of its labels. The invariant of a
//! labeled rigid graph is the multiset, over vertices `s`, of the tensor
//! signatures of `link s`. Differing invariants certify that two graph
//! products are not correlated; equal invariants certify nothing.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::graphs::{GraphError, Labels, SimpleGraph};

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum CorrelationError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("link invariant defined only for rigid graphs (vertex {0:?} fails link(link s) = {{s}})")]
    NotRigid(String),
    #[error("vertex {0:?} is unlabeled")]
    Unlabeled(String),
    #[error("empty class label")]
    EmptyLabel,
    #[error("family entries must be at least 2, got {0}")]
    EntryTooSmall(usize),
    #[error("{blocks} blocks requested for {items} factors")]
    TooManyBlocks { blocks: usize, items: usize },
    #[error("block signatures must be nonempty")]
    EmptySignature,
}

/// Opaque class label, e.g. `"F2"`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FactorClassLabel(String);

impl FactorClassLabel {
    pub fn new(label: impl Into<String>) -> Result<Self, CorrelationError> {
        let label = label.into();
        if label.is_empty() {
            return Err(CorrelationError::EmptyLabel);
        }
        Ok(FactorClassLabel(label))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for FactorClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Multiset of labels, stored sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TensorSignature(Vec<FactorClassLabel>);

impl TensorSignature {
    pub fn new(labels: impl IntoIterator<Item = FactorClassLabel>) -> Self {
        let mut v: Vec<FactorClassLabel> = labels.into_iter().collect();
        v.sort();
        TensorSignature(v)
    }

    pub fn labels(&self) -> &[FactorClassLabel] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for TensorSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body: Vec<&str> = self.0.iter().map(FactorClassLabel::as_str).collect();
        write!(f, "<{}>", body.join(","))
    }
}

/// Multiset over vertices of the signature of `link s`, stored sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LinkInvariant(Vec<TensorSignature>);

impl LinkInvariant {
    pub fn entries(&self) -> &[TensorSignature] {
        &self.0
    }
}

pub fn link_invariant(g: &SimpleGraph, labels: &Labels) -> Result<LinkInvariant, CorrelationError> {
    let rigidity = g.is_rigid();
    if let Some(w) = rigidity.witness {
        return Err(CorrelationError::NotRigid(w.vertex));
    }
    let label_of = |v: &str| -> Result<FactorClassLabel, CorrelationError> {
        let l = labels.get(v).ok_or_else(|| CorrelationError::Unlabeled(v.to_string()))?;
        FactorClassLabel::new(l.clone())
    };
    let mut entries = Vec::with_capacity(g.vertex_count());
    for s in g.vertices() {
        label_of(s)?;
        let link = g.link(s)?;
        let sig = TensorSignature::new(link.iter().map(label_of).collect::<Result<Vec<_>, _>>()?);
        entries.push(sig);
    }
    entries.sort();
    Ok(LinkInvariant(entries))
}

pub const NOT_CORRELATED: &str = "not W*-correlated";
pub const INDISTINGUISHABLE: &str = "indistinguishable by this invariant";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "not W*-correlated")]
    NotCorrelated,
    #[serde(rename = "indistinguishable by this invariant")]
    Indistinguishable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NotCorrelated => NOT_CORRELATED,
            Verdict::Indistinguishable => INDISTINGUISHABLE,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictReport {
    pub verdict: Verdict,
    pub invariant_a: LinkInvariant,
    pub invariant_b: LinkInvariant,
}

/// Compares the link invariants of two labeled rigid graphs.
pub fn compare_labeled_graphs(
    a: (&SimpleGraph, &Labels),
    b: (&SimpleGraph, &Labels),
) -> Result<VerdictReport, CorrelationError> {
    let invariant_a = link_invariant(a.0, a.1)?;
    let invariant_b = link_invariant(b.0, b.1)?;
    let verdict = if invariant_a == invariant_b {
        Verdict::Indistinguishable
    } else {
        Verdict::NotCorrelated
    };
    Ok(VerdictReport {
        verdict,
        invariant_a,
        invariant_b,
    })
}

/// Disjoint union of complete graphs `K_n`, `n ∈ family`, every vertex
/// labeled `F2`. Vertices are named `K<n>.<i>`.
pub fn family_graph(family: &[usize]) -> Result<(SimpleGraph, Labels), CorrelationError> {
    let mut sizes: Vec<usize> = family.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    let mut graph = SimpleGraph::complete(Vec::<String>::new());
    for &n in &sizes {
        if n < 2 {
            return Err(CorrelationError::EntryTooSmall(n));
        }
        let width = (n - 1).to_string().len();
        let clique = SimpleGraph::complete((0..n).map(|i| format!("K{n}.{i:0width$}")));
        graph = graph.disjoint_union(&clique)?;
    }
    let labels = graph.vertices().iter().map(|v| (v.clone(), "F2".to_string())).collect();
    Ok((graph, labels))
}

/// Distinguishes the free products over `F` and `F'` of powers of `F2` by
/// their link invariants.
pub fn gf_distinguish(family: &[usize], family_prime: &[usize]) -> Result<VerdictReport, CorrelationError> {
    let (ga, la) = family_graph(family)?;
    let (gb, lb) = family_graph(family_prime)?;
    compare_labeled_graphs((&ga, &la), (&gb, &lb))
}

/// Partition of `{1..n}` into blocks, 1-based.
pub type Partition = Vec<Vec<usize>>;

/// Finds a partition of the factors `a` into `b.len()` nonempty blocks with
/// block `k` carrying exactly the multiset `b[k]`.
///
/// Factors are assigned in order, each to the lowest-numbered block that can
/// still take its label; the first complete assignment found is returned.
pub fn tensor_match(a: &[FactorClassLabel], b: &[TensorSignature]) -> Result<Option<Partition>, CorrelationError> {
    if b.is_empty() || b.len() > a.len() {
        return Err(CorrelationError::TooManyBlocks {
            blocks: b.len(),
            items: a.len(),
        });
    }
    if b.iter().any(TensorSignature::is_empty) {
        return Err(CorrelationError::EmptySignature);
    }
    // remaining demand per block per label
    let mut demand: Vec<BTreeMap<&FactorClassLabel, usize>> = b
        .iter()
        .map(|sig| {
            let mut m = BTreeMap::new();
            for l in sig.labels() {
                *m.entry(l).or_insert(0) += 1;
            }
            m
        })
        .collect();
    let total: usize = b.iter().map(TensorSignature::len).sum();
    if total != a.len() {
        return Ok(None);
    }
    let mut assignment = vec![0usize; a.len()];
    if assign(a, 0, &mut demand, &mut assignment) {
        let mut blocks: Partition = vec![Vec::new(); b.len()];
        for (i, &k) in assignment.iter().enumerate() {
            blocks[k].push(i + 1);
        }
        Ok(Some(blocks))
    } else {
        Ok(None)
    }
}

fn assign<'a>(
    a: &'a [FactorClassLabel],
    i: usize,
    demand: &mut [BTreeMap<&'a FactorClassLabel, usize>],
    assignment: &mut [usize],
) -> bool {
    if i == a.len() {
        return true;
    }
    for k in 0..demand.len() {
        let Some(slot) = demand[k].get_mut(&a[i]) else {
            continue;
        };
        if *slot == 0 {
            continue;
        }
        *slot -= 1;
        assignment[i] = k;
        if assign(a, i + 1, demand, assignment) {
            return true;
        }
        *demand[k].get_mut(&a[i]).unwrap() += 1;
    }
    false
}
