//! The index-`k` construction.
//!
//! Given a graph product `G` over `Γ = (S, E)`, a vertex `s₁` carrying a free
//! group and a subgroup `H` of index `k` in it, the new graph `Γ'` has vertex
//! set `star(s₁) ⊔ ([k] × (S ∖ star(s₁)))`:
//!
//! - two star vertices are adjacent iff they are adjacent in `Γ`;
//! - `(i, s)` and `(j, t)` are adjacent iff `i = j` and `s ~ t`;
//! - a star vertex `s` and `(i, t)` are adjacent iff `s ~ t`.
//!
//! `G'` puts `H` at `s₁` and copies the remaining vertex groups. The map
//! `φ : G' → G` fixes the star syllables and sends a syllable `g` at `(i, s)`
//! to `g_i⁻¹ g g_i`, where `g_i` is the `i`-th coset representative. Copies
//! are named `(i,s)` with `i` counted from 1.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::free_group::Permutation;
use crate::graphs::{GraphDocument, Labels, SimpleGraph};

use super::{
    enumerate_ball, gp_multiply, FiniteIndexSubgroupSpec, GPElement, GpError, GraphProduct, GroupElement,
    Syllable, VertexGroupSpec,
};

/// Where a vertex of `Γ'` comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    /// A vertex of `star(s₁)`.
    Star(usize),
    /// Copy `i` (0-based) of a vertex outside `star(s₁)`.
    Copy { copy: usize, vertex: usize },
}

#[derive(Debug, Clone)]
pub struct GammaPrimeConstruction {
    source: Arc<GraphProduct>,
    s1: usize,
    subgroup: Arc<FiniteIndexSubgroupSpec>,
    target: Arc<GraphProduct>,
    origin: Vec<Origin>,
}

pub fn construct_gamma_prime(
    source: Arc<GraphProduct>,
    s1: &str,
    subgroup: FiniteIndexSubgroupSpec,
) -> Result<GammaPrimeConstruction, GpError> {
    let graph = source.graph().clone();
    let s1_idx = graph.index_of(s1)?;
    match source.group(s1_idx) {
        VertexGroupSpec::Free { rank } if *rank == subgroup.ambient_rank() => {}
        other => {
            return Err(GpError::LabelMismatch {
                vertex: s1.to_string(),
                label: other.label(),
                rank: subgroup.ambient_rank(),
            })
        }
    }
    let k = subgroup.index();
    let n = graph.vertex_count();
    let in_star: Vec<bool> = (0..n).map(|v| v == s1_idx || graph.adjacent_idx(v, s1_idx)).collect();

    let mut named: Vec<(String, Origin)> = Vec::new();
    for v in 0..n {
        if in_star[v] {
            named.push((graph.name(v).to_string(), Origin::Star(v)));
        } else {
            for i in 0..k {
                named.push((format!("({},{})", i + 1, graph.name(v)), Origin::Copy { copy: i, vertex: v }));
            }
        }
    }
    named.sort_by(|a, b| a.0.cmp(&b.0));
    if let Some(w) = named.windows(2).find(|w| w[0].0 == w[1].0) {
        return Err(GpError::NameCollision(w[0].0.clone()));
    }

    let base = |o: Origin| match o {
        Origin::Star(v) => v,
        Origin::Copy { vertex, .. } => vertex,
    };
    let mut edges = Vec::new();
    for a in 0..named.len() {
        for b in a + 1..named.len() {
            let (oa, ob) = (named[a].1, named[b].1);
            let connected = match (oa, ob) {
                (Origin::Copy { copy: i, .. }, Origin::Copy { copy: j, .. }) if i != j => false,
                _ => graph.adjacent_idx(base(oa), base(ob)),
            };
            if connected {
                edges.push((a, b));
            }
        }
    }
    let origin: Vec<Origin> = named.iter().map(|(_, o)| *o).collect();
    let names: Vec<String> = named.into_iter().map(|(n, _)| n).collect();
    let new_graph = Arc::new(SimpleGraph::from_indexed(names, &edges));

    let subgroup = Arc::new(subgroup);
    let groups: BTreeMap<String, VertexGroupSpec> = origin
        .iter()
        .enumerate()
        .map(|(idx, &o)| {
            let spec = match o {
                Origin::Star(v) if v == s1_idx => VertexGroupSpec::Subgroup(subgroup.clone()),
                o => source.group(base(o)).clone(),
            };
            (new_graph.name(idx).to_string(), spec)
        })
        .collect();
    let target = Arc::new(GraphProduct::new(new_graph, groups)?);

    Ok(GammaPrimeConstruction {
        source,
        s1: s1_idx,
        subgroup,
        target,
        origin,
    })
}

/// Action of the generators of `G` on the cosets `[k]`.
#[derive(Debug, Clone, Serialize)]
pub struct CosetAction {
    /// `(vertex, generator, cycle notation)` for every generator of `G`.
    pub generators: Vec<(String, String, String)>,
    pub index: usize,
    pub transitive: bool,
    /// Every `φ(generator of G')` fixes coset 1.
    pub phi_generators_stabilize: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct InjectivityReport {
    pub radius: usize,
    pub elements_checked: usize,
    pub distinct_images: usize,
    /// Nontrivial elements with trivial image, as strings.
    pub violations: Vec<String>,
    pub complete: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct HomomorphismReport {
    pub pairs_checked: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

impl GammaPrimeConstruction {
    /// The graph product `G` over `Γ`.
    pub fn source(&self) -> &Arc<GraphProduct> {
        &self.source
    }

    /// The graph product `G'` over `Γ'`.
    pub fn target(&self) -> &Arc<GraphProduct> {
        &self.target
    }

    pub fn subgroup(&self) -> &FiniteIndexSubgroupSpec {
        &self.subgroup
    }

    pub fn s1(&self) -> &str {
        self.source.graph().name(self.s1)
    }

    pub fn origin(&self, vertex: usize) -> Origin {
        self.origin[vertex]
    }

    /// `π : S' → S`, forgetting the copy index.
    pub fn projection(&self, vertex: usize) -> usize {
        match self.origin[vertex] {
            Origin::Star(v) => v,
            Origin::Copy { vertex, .. } => vertex,
        }
    }

    pub fn star_size(&self) -> usize {
        self.origin.iter().filter(|o| matches!(o, Origin::Star(_))).count()
    }

    /// `|star s₁| + k · |S ∖ star s₁|`.
    pub fn expected_vertex_count(&self) -> usize {
        let n = self.source.graph().vertex_count();
        let star = self.star_size();
        star + self.subgroup.index() * (n - star)
    }

    /// Checks `π(link r) = link π(r)` for every vertex `r` of `Γ'`.
    pub fn projection_preserves_links(&self) -> bool {
        let g = self.source.graph();
        let gp = self.target.graph();
        (0..gp.vertex_count()).all(|r| {
            let image: HashSet<usize> = gp.neighbors_idx(r).map(|t| self.projection(t)).collect();
            let link: HashSet<usize> = g.neighbors_idx(self.projection(r)).collect();
            image == link
        })
    }

    /// `φ : G' → G`, applied syllable by syllable and normalized in `G`.
    pub fn phi_apply(&self, x: &GPElement) -> Result<GPElement, GpError> {
        if !Arc::ptr_eq(x.product(), &self.target) && **x.product() != *self.target {
            return Err(GpError::ProductMismatch);
        }
        let reps = self.subgroup.coset_representatives();
        let mut raw = Vec::new();
        for s in x.syllables() {
            match self.origin[s.vertex] {
                Origin::Star(v) => raw.push(Syllable {
                    vertex: v,
                    element: s.element.clone(),
                }),
                Origin::Copy { copy, vertex } => {
                    let g = &reps[copy];
                    if !g.is_identity() {
                        raw.push(Syllable {
                            vertex: self.s1,
                            element: GroupElement::Word(g.inverse()),
                        });
                    }
                    raw.push(Syllable {
                        vertex,
                        element: s.element.clone(),
                    });
                    if !g.is_identity() {
                        raw.push(Syllable {
                            vertex: self.s1,
                            element: GroupElement::Word(g.clone()),
                        });
                    }
                }
            }
        }
        super::gp_normal_form(&self.source, raw)
    }

    /// Image of coset `point` (0-based) under an element of `G`; only the
    /// `s₁` syllables move cosets.
    pub fn act_on_coset(&self, x: &GPElement, point: usize) -> usize {
        x.syllables().iter().rev().fold(point, |p, s| match (&s.element, s.vertex == self.s1) {
            (GroupElement::Word(w), true) => self.subgroup.act(w, p),
            _ => p,
        })
    }

    pub fn coset_action(&self) -> CosetAction {
        let k = self.subgroup.index();
        let g = self.source.graph();
        let mut generators = Vec::new();
        let mut perms: Vec<Permutation> = Vec::new();
        for v in 0..g.vertex_count() {
            for element in self.source.group(v).generators() {
                let perm = match (&element, v == self.s1) {
                    (GroupElement::Word(w), true) => self.subgroup.permutation_of(w),
                    _ => Permutation::identity(k),
                };
                generators.push((g.name(v).to_string(), element.to_string(), perm.cycle_notation()));
                perms.push(perm);
            }
        }
        let transitive = crate::free_group::is_transitive(k, &perms);
        let phi_generators_stabilize = self.target.generators().iter().all(|x| {
            let y = self.phi_apply(x).expect("generator of G'");
            self.act_on_coset(&y, 0) == 0
        });
        CosetAction {
            generators,
            index: k,
            transitive,
            phi_generators_stabilize,
        }
    }

    /// Enumerates the ball of the given radius in `G'` and checks that only
    /// the identity maps to the identity.
    pub fn verify_phi_injective_on_ball(&self, radius: usize, budget: &Budget) -> InjectivityReport {
        let ball = enumerate_ball(&self.target, radius, budget);
        let mut violations = Vec::new();
        let mut images = HashSet::new();
        for x in ball.iter() {
            let y = self.phi_apply(x).expect("element of G'");
            if y.is_identity() && !x.is_identity() {
                violations.push(x.to_string());
            }
            images.insert(y.syllables().to_vec());
        }
        let checked = ball.len();
        InjectivityReport {
            radius,
            elements_checked: checked,
            distinct_images: images.len(),
            passed: violations.is_empty() && images.len() == checked && ball.complete,
            violations,
            complete: ball.complete,
        }
    }

    /// Random products of at most `radius` generators of `G'`.
    pub fn random_element(&self, rng: &mut impl Rng, radius: usize) -> GPElement {
        let gens = self.target.generators();
        let len = rng.gen_range(0..=radius);
        (0..len).fold(GPElement::identity(self.target.clone()), |acc, _| {
            let g = &gens[rng.gen_range(0..gens.len())];
            gp_multiply(&acc, g).expect("same product")
        })
    }

    /// Checks `φ(xy) = φ(x)φ(y)` on seeded random pairs.
    pub fn check_homomorphism(&self, pairs: usize, radius: usize, seed: u64) -> HomomorphismReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut failures = Vec::new();
        for _ in 0..pairs {
            let x = self.random_element(&mut rng, radius);
            let y = self.random_element(&mut rng, radius);
            let lhs = self.phi_apply(&gp_multiply(&x, &y).expect("same product")).expect("in G'");
            let rhs = gp_multiply(
                &self.phi_apply(&x).expect("in G'"),
                &self.phi_apply(&y).expect("in G'"),
            )
            .expect("same product");
            if lhs != rhs {
                failures.push(format!("x = {x}, y = {y}"));
            }
        }
        HomomorphismReport {
            pairs_checked: pairs,
            passed: failures.is_empty(),
            failures,
        }
    }

    /// `Γ'` with its labels, in the graph JSON format.
    pub fn target_document(&self) -> GraphDocument {
        GraphDocument::from_graph(self.target.graph(), Some(&self.target.labels()))
    }
}

/// `{"graph":{...},"labels":{...},"s1":"v","k":2,"quotient":{"a":[2,1],"b":[1,2]}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaPrimeDescriptor {
    pub graph: GraphDocument,
    #[serde(default, skip_serializing_if = "Labels::is_empty")]
    pub labels: Labels,
    pub s1: String,
    pub k: usize,
    pub quotient: BTreeMap<String, Vec<usize>>,
}

impl GammaPrimeDescriptor {
    pub fn build(&self) -> Result<GammaPrimeConstruction, GpError> {
        let mut graph_doc = self.graph.clone();
        let mut labels = std::mem::take(&mut graph_doc.labels);
        labels.extend(self.labels.clone());
        let (graph, _) = graph_doc.into_graph()?;
        let source = Arc::new(GraphProduct::from_labels(Arc::new(graph), &labels)?);
        let s1 = source.graph().index_of(&self.s1)?;
        let rank = match source.group(s1) {
            VertexGroupSpec::Free { rank } => *rank,
            other => {
                return Err(GpError::LabelMismatch {
                    vertex: self.s1.clone(),
                    label: other.label(),
                    rank: self.quotient.len(),
                })
            }
        };
        let sub = FiniteIndexSubgroupSpec::from_quotient(rank, &self.quotient)?;
        if sub.index() != self.k {
            return Err(GpError::Quotient(format!(
                "k = {} but the permutations act on {} points",
                self.k,
                sub.index()
            )));
        }
        construct_gamma_prime(source, &self.s1, sub)
    }
}
