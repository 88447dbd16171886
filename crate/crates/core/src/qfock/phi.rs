use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use super::ops::wick_apply;
use super::{level_q_inner, q_norm, FockBudget, FockError, FockSpace, FockVector};

/// A finite linear combination `Σ c_i W_q(ξ_{i,1} ⊗ ⋯ ⊗ ξ_{i,n})` of Wick
/// words of simple tensors, all of the same level.
#[derive(Debug, Clone, PartialEq)]
pub struct WickSpec {
    pub terms: Vec<(f64, Vec<DVector<f64>>)>,
}

impl WickSpec {
    pub fn simple(factors: Vec<DVector<f64>>) -> Self {
        WickSpec {
            terms: vec![(1.0, factors)],
        }
    }

    /// Tensor level shared by all terms.
    pub fn level(&self) -> Result<usize, FockError> {
        let n = self
            .terms
            .first()
            .map(|(_, f)| f.len())
            .ok_or_else(|| FockError::NotInSubspace("empty Wick combination".into()))?;
        if self.terms.iter().any(|(_, f)| f.len() != n) {
            return Err(FockError::NotInSubspace("Wick terms of different levels".into()));
        }
        Ok(n)
    }

    /// The largest `k` with every term in `F^n_k`: each factor must lie in one
    /// summand, and `k` counts factors from the second summand.
    pub fn second_summand_count(&self, space: &FockSpace) -> Result<usize, FockError> {
        let first = space.first_summand().ok_or(FockError::NoSplitting)?;
        let mut k = usize::MAX;
        for (_, factors) in &self.terms {
            let mut count = 0;
            for f in factors {
                space.check_one_particle(f)?;
                let in_first = f.iter().skip(first).all(|&x| x == 0.0);
                let in_second = f.iter().take(first).all(|&x| x == 0.0);
                match (in_first, in_second) {
                    (true, true) => return Err(FockError::NotInSubspace("zero factor in a Wick term".into())),
                    (false, false) => {
                        return Err(FockError::NotInSubspace(
                            "factor mixes the two summands; split it into separate terms".into(),
                        ))
                    }
                    (false, true) => count += 1,
                    (true, false) => {}
                }
            }
            k = k.min(count);
        }
        Ok(k)
    }

    /// `x · v` for the algebra element `x` described by this combination.
    pub fn apply(&self, space: &FockSpace, v: &FockVector) -> Result<FockVector, FockError> {
        let mut out = FockVector::zero(space);
        for (c, factors) in &self.terms {
            out.axpy(*c, &wick_apply(space, factors, v)?);
        }
        Ok(out)
    }
}

/// Outcome of one evaluation of `Φ_{x,y}(a) = E(x a y)` on the vacuum.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PhiReport {
    #[serde(skip)]
    pub image: FockVector,
    pub n: usize,
    pub n1: usize,
    pub n2: usize,
    pub k1: usize,
    pub k2: usize,
    /// Squared q-norm of `Φ(a)Ω` outside levels `[n - n1 - n2, n + n1 + n2]`.
    pub band_mass: f64,
    /// `‖Φ(a)Ω‖_q / ‖aΩ‖_q`.
    pub ratio: f64,
}

/// Embeds a level-`n` tensor over the first summand `Rᵐ` into `(Rᵐ ⊕ Rᵏ)^{⊗n}`.
fn embed_first_summand(space: &FockSpace, n: usize, coeffs: &DVector<f64>) -> Result<DVector<f64>, FockError> {
    let m = space.first_summand().ok_or(FockError::NoSplitting)?;
    let expected = m.pow(n as u32);
    if coeffs.len() != expected {
        return Err(FockError::DimensionMismatch {
            expected,
            got: coeffs.len(),
        });
    }
    let dim = space.dim();
    let mut out = DVector::zeros(space.level_dim(n));
    for (idx, &c) in coeffs.iter().enumerate() {
        let mut rest = idx;
        let mut target = 0;
        let mut scale = 1;
        for _ in 0..n {
            target += (rest % m) * scale;
            rest /= m;
            scale *= dim;
        }
        out[target] = c;
    }
    Ok(out)
}

/// Basis factors `e_{i_1}, …, e_{i_n}` of the level-`n` basis tensor `idx`.
fn basis_factors(space: &FockSpace, n: usize, idx: usize) -> Vec<DVector<f64>> {
    let dim = space.dim();
    let mut digits = vec![0; n];
    let mut rest = idx;
    for slot in (0..n).rev() {
        digits[slot] = rest % dim;
        rest /= dim;
    }
    digits.into_iter().map(|d| space.unit(d)).collect()
}

fn project_first_summand(space: &FockSpace, v: &FockVector) -> FockVector {
    let m = space.first_summand().expect("checked by caller");
    let dim = space.dim();
    let mut out = v.clone();
    for n in 0..=space.cap() {
        for (idx, c) in out.level_mut(n).iter_mut().enumerate() {
            let mut rest = idx;
            if (0..n).any(|_| {
                let d = rest % dim;
                rest /= dim;
                d >= m
            }) {
                *c = 0.0;
            }
        }
    }
    out
}

/// `Φ_{x,y}(a)Ω = E(x · a · y · Ω)` where `a = W_q(α)` for the level-`n`
/// first-summand tensor `α` (coefficients over `(Rᵐ)^{⊗n}`).
pub fn phi_map(space: &FockSpace, x: &WickSpec, y: &WickSpec, a: &DVector<f64>, n: usize) -> Result<PhiReport, FockError> {
    if space.q().abs() >= 1.0 {
        return Err(FockError::InvalidQ(space.q()));
    }
    let (n1, n2) = (x.level()?, y.level()?);
    let (k1, k2) = (x.second_summand_count(space)?, y.second_summand_count(space)?);
    let required = n + n1 + n2;
    if required > space.cap() {
        return Err(FockError::CapTooSmall { required, cap: space.cap() });
    }
    let alpha = embed_first_summand(space, n, a)?;
    let a_omega = FockVector::from_level(space, n, &alpha)?;
    let a_norm = q_norm(space, &a_omega)?;
    if a_norm == 0.0 {
        return Err(FockError::NotInSubspace("a has zero 2-norm".into()));
    }

    let y_omega = y.apply(space, &FockVector::vacuum(space))?;
    let mut ay = FockVector::zero(space);
    for (idx, &c) in alpha.iter().enumerate() {
        if c != 0.0 {
            ay.axpy(c, &wick_apply(space, &basis_factors(space, n, idx), &y_omega)?);
        }
    }
    let xay = x.apply(space, &ay)?;
    let image = project_first_summand(space, &xay);

    let width = n1 + n2;
    let band_mass = (0..=space.cap())
        .filter(|&r| r + width < n || r > n + width)
        .map(|r| level_q_inner(space, r, image.level(r), image.level(r)))
        .sum();
    let ratio = q_norm(space, &image)? / a_norm;
    Ok(PhiReport {
        image,
        n,
        n1,
        n2,
        k1,
        k2,
        band_mass,
        ratio,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayRow {
    pub q: f64,
    pub n: usize,
    pub ratio: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayProfile {
    pub q: f64,
    pub k: usize,
    pub rows: Vec<DecayRow>,
    /// `max_n ratio(n) / |q|^{kn}`: an empirical lower bound for the constant.
    pub fitted_c: f64,
}

/// Parameters of a decay sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayConfig {
    pub q: f64,
    /// `x = y = W_q(f^{⊗k})`.
    pub k: usize,
    pub n_max: usize,
    pub dim_h: usize,
    pub dim_k: usize,
    pub samples: usize,
    pub seed: u64,
}

impl Default for DecayConfig {
    fn default() -> Self {
        DecayConfig {
            q: 0.5,
            k: 1,
            n_max: 4,
            dim_h: 1,
            dim_k: 1,
            samples: 16,
            seed: 0,
        }
    }
}

/// Decay of `‖Φ_{x,x}(a)‖₂ / ‖a‖₂` in the level of `a`, with
/// `x = W_q(f^{⊗k})` for a unit second-summand vector `f`.
///
/// For each `n in 1..=n_max` the ratio is maximized over `samples` random
/// unit directions of `(Rᵐ)^{⊗n}` drawn from a seeded generator.
pub fn decay_profile(cfg: &DecayConfig, budget: &FockBudget) -> Result<DecayProfile, FockError> {
    let DecayConfig {
        q,
        k,
        n_max,
        dim_h,
        dim_k,
        samples,
        seed,
    } = *cfg;
    if dim_k == 0 {
        return Err(FockError::ZeroDimension);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::new();
    for n in 1..=n_max {
        let space = FockSpace::with_budget(q, dim_h + dim_k, n + 2 * k, Some(dim_h), *budget)?;
        let f = space.unit(dim_h);
        let x = WickSpec::simple(vec![f; k]);
        let len = dim_h.pow(n as u32);
        let mut best = 0.0f64;
        for _ in 0..samples.max(1) {
            let mut a = DVector::from_fn(len, |_, _| StandardNormal.sample(&mut rng));
            let norm = a.norm();
            if norm == 0.0 {
                continue;
            }
            a /= norm;
            best = best.max(phi_map(&space, &x, &x, &a, n)?.ratio);
        }
        rows.push(DecayRow { q, n, ratio: best });
    }
    let fitted_c = rows
        .iter()
        .map(|r| r.ratio / q.abs().powi((k * r.n) as i32))
        .fold(0.0, f64::max);
    Ok(DecayProfile { q, k, rows, fitted_c })
}
