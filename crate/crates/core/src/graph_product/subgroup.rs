use std::collections::BTreeMap;

use crate::free_group::{is_transitive, FreeWord, Letter, Permutation};

use super::GpError;

/// A finite-index subgroup `H` of a free group, given as the stabilizer of
/// point 1 under a homomorphism to the permutations of `[k]`.
///
/// Permutations compose as functions: a word `x₁ ⋯ xₘ` sends a point `p` to
/// `x₁(⋯ xₘ(p))`. With this left action the points correspond to the left
/// cosets `gH`, and the coset representative of point `j` is the ShortLex
/// least word `g` with `g(1) = j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteIndexSubgroupSpec {
    perms: Vec<Permutation>,
    inverses: Vec<Permutation>,
    index: usize,
    reps: Vec<FreeWord>,
    schreier: Vec<FreeWord>,
}

impl FiniteIndexSubgroupSpec {
    /// `perms[g]` is the image of free generator `g`. Rejects an empty
    /// generator list, mixed degrees and intransitive actions.
    pub fn new(perms: Vec<Permutation>) -> Result<Self, GpError> {
        let index = perms
            .first()
            .map(Permutation::degree)
            .ok_or_else(|| GpError::Quotient("ambient free group needs at least one generator".into()))?;
        if perms.iter().any(|p| p.degree() != index) {
            return Err(GpError::Quotient("permutations act on different sets".into()));
        }
        if !is_transitive(index, &perms) {
            return Err(GpError::NotTransitive(index));
        }
        let inverses = perms.iter().map(Permutation::inverse).collect();
        let mut spec = FiniteIndexSubgroupSpec {
            perms,
            inverses,
            index,
            reps: Vec::new(),
            schreier: Vec::new(),
        };
        spec.reps = spec.compute_representatives();
        spec.schreier = spec.compute_schreier_generators();
        Ok(spec)
    }

    /// From one-line notation keyed by generator name, e.g.
    /// `{"a":[2,1],"b":[1,2]}`. Names must be exactly `a, b, ...` up to `rank`.
    pub fn from_quotient(rank: usize, quotient: &BTreeMap<String, Vec<usize>>) -> Result<Self, GpError> {
        let expected: Vec<String> = (0..rank).map(|g| ((b'a' + g as u8) as char).to_string()).collect();
        let given: Vec<&String> = quotient.keys().collect();
        if given != expected.iter().collect::<Vec<_>>() {
            return Err(GpError::Quotient(format!(
                "expected images for generators {expected:?}, got {given:?}"
            )));
        }
        let perms = expected
            .iter()
            .map(|g| Permutation::from_one_line(&quotient[g]).map_err(GpError::from))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(perms)
    }

    pub fn ambient_rank(&self) -> usize {
        self.perms.len()
    }

    /// The index `k`.
    pub fn index(&self) -> usize {
        self.index
    }

    /// Nielsen–Schreier rank `1 + k (r - 1)`.
    pub fn free_rank(&self) -> usize {
        1 + self.index * (self.ambient_rank() - 1)
    }

    pub fn generator_permutation(&self, g: usize) -> &Permutation {
        &self.perms[g]
    }

    fn letter_perm(&self, l: Letter) -> &Permutation {
        let g = (l.unsigned_abs() - 1) as usize;
        if l > 0 {
            &self.perms[g]
        } else {
            &self.inverses[g]
        }
    }

    /// Image of `point` (0-based) under the word.
    pub fn act(&self, w: &FreeWord, point: usize) -> usize {
        w.letters().iter().rev().fold(point, |p, &l| self.letter_perm(l).apply(p))
    }

    /// Permutation image of a word.
    pub fn permutation_of(&self, w: &FreeWord) -> Permutation {
        let images = (0..self.index).map(|p| self.act(w, p)).collect();
        Permutation::from_images(images).expect("word image is a permutation")
    }

    /// Membership in `H`: the word fixes the base point.
    pub fn contains(&self, w: &FreeWord) -> bool {
        self.act(w, 0) == 0
    }

    /// `g_1 = 1, g_2, ..., g_k` with `g_j(1) = j`; index `j - 1` in the slice.
    pub fn coset_representatives(&self) -> &[FreeWord] {
        &self.reps
    }

    /// Free basis of `H`: the nontrivial `g_{x(j)}⁻¹ x g_j`.
    pub fn schreier_generators(&self) -> &[FreeWord] {
        &self.schreier
    }

    fn letters(&self) -> Vec<Letter> {
        (1..=self.ambient_rank() as Letter).flat_map(|g| [g, -g]).collect()
    }

    fn compute_representatives(&self) -> Vec<FreeWord> {
        let k = self.index;
        let letters = self.letters();
        let mut reps: Vec<Option<FreeWord>> = vec![None; k];
        reps[0] = Some(FreeWord::identity());
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            // candidates for the next layer: x · rep(p) with p in the frontier
            let mut best: BTreeMap<usize, FreeWord> = BTreeMap::new();
            for &p in &frontier {
                for &x in &letters {
                    let j = self.letter_perm(x).apply(p);
                    if reps[j].is_some() {
                        continue;
                    }
                    let cand = FreeWord::from_letters(
                        std::iter::once(x).chain(reps[p].as_ref().unwrap().letters().iter().copied()),
                    );
                    let slot = best.entry(j).or_insert_with(|| cand.clone());
                    if cand < *slot {
                        *slot = cand;
                    }
                }
            }
            frontier = best.keys().copied().collect();
            for (j, w) in best {
                reps[j] = Some(w);
            }
        }
        reps.into_iter().map(|r| r.expect("transitive action reaches every point")).collect()
    }

    fn compute_schreier_generators(&self) -> Vec<FreeWord> {
        let mut out: Vec<FreeWord> = Vec::new();
        for j in 0..self.index {
            for g in 0..self.ambient_rank() {
                let x = FreeWord::generator(g);
                let target = self.perms[g].apply(j);
                let s = self.reps[target].inverse().multiply(&x).multiply(&self.reps[j]);
                if !s.is_identity() && !out.contains(&s) && !out.contains(&s.inverse()) {
                    out.push(s);
                }
            }
        }
        out
    }
}
