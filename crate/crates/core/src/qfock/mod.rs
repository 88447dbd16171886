//! Truncated q-deformed Fock spaces over a finite-dimensional real space.
//!
//! Level `n` of the space is `Rᵈ ⊗ ⋯ ⊗ Rᵈ` (`n` factors) stored densely in the
//! standard tensor basis, first factor most significant. The q-geometry enters
//! only through the Gram operators `T_n = Σ_σ q^{inv σ} π_σ`, so
//! `⟨ξ, η⟩_q = Σ_n ⟨T_n ξ_n, η_n⟩`. Levels above `cap` are dropped; creation
//! out of the top level is lost, which every operator records in its
//! exactness level.
//!
//! Only real vectors are supported, so `ξ̄ = ξ` throughout.

mod gram;
mod moments;
mod ops;
mod phi;

pub use gram::{build_tn, inversions, permutations, tn_spectrum, TnSpectrum};
pub use moments::{pair_partition_oracle, pairings_with_crossings, vacuum_moment};
pub use ops::{
    annihilation, conditional_projection, creation, deformation_profile, field_operator, rotation_deformation,
    rotation_matrix, second_quantize, wick, wick_apply, FockOperator,
};
pub use phi::{decay_profile, phi_map, DecayConfig, DecayProfile, DecayRow, PhiReport, WickSpec};

use nalgebra::{DMatrix, DVector};

#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum FockError {
    #[error("q = {0} outside [-1, 1]")]
    InvalidQ(f64),
    #[error("dimension must be at least 1")]
    ZeroDimension,
    #[error("{what} needs {needed} (limit {limit})")]
    Budget { what: &'static str, needed: u128, limit: u128 },
    #[error("vector or operator belongs to a different Fock space")]
    SpaceMismatch,
    #[error("expected a vector of length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("truncation level {cap} too small: exact computation needs cap >= {required}")]
    CapTooSmall { required: usize, cap: usize },
    #[error("operator norm {0} exceeds 1")]
    NormViolation(f64),
    #[error("no splitting of the coordinates into two summands declared")]
    NoSplitting,
    #[error("rotation needs equal summands, got {first} + {second}")]
    UnequalSplitting { first: usize, second: usize },
    #[error("{0}")]
    NotInSubspace(String),
    #[error("expected a unit vector, norm is {0}")]
    NotUnit(f64),
}

/// Resource caps for dense Fock-space objects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FockBudget {
    /// Bytes of a single dense matrix (Gram matrix or full operator).
    pub max_matrix_bytes: u128,
    /// `n! · dimⁿ` summation work when building `T_n`.
    pub max_permutation_work: u128,
}

impl Default for FockBudget {
    fn default() -> Self {
        FockBudget {
            max_matrix_bytes: 1 << 30,
            max_permutation_work: 1_000_000_000,
        }
    }
}

impl FockBudget {
    fn check(&self, what: &'static str, needed: u128, limit: u128) -> Result<(), FockError> {
        if needed > limit {
            Err(FockError::Budget { what, needed, limit })
        } else {
            Ok(())
        }
    }

    fn check_matrix(&self, side: usize) -> Result<(), FockError> {
        let bytes = (side as u128) * (side as u128) * 8;
        self.check("dense matrix", bytes, self.max_matrix_bytes)
    }
}

/// Truncated q-Fock space: parameters plus the Gram matrices `T_0..T_cap`.
#[derive(Debug, Clone)]
pub struct FockSpace {
    q: f64,
    dim: usize,
    cap: usize,
    first_summand: Option<usize>,
    gram: Vec<DMatrix<f64>>,
    offsets: Vec<usize>,
    budget: FockBudget,
}

impl PartialEq for FockSpace {
    fn eq(&self, other: &Self) -> bool {
        self.q == other.q && self.dim == other.dim && self.cap == other.cap && self.first_summand == other.first_summand
    }
}

impl FockSpace {
    pub fn new(q: f64, dim: usize, cap: usize) -> Result<Self, FockError> {
        Self::with_budget(q, dim, cap, None, FockBudget::default())
    }

    /// Space over `Rᵐ ⊕ Rᵏ`: coordinates `0..first` form the first summand,
    /// the remaining `second` the second.
    pub fn split(q: f64, first: usize, second: usize, cap: usize) -> Result<Self, FockError> {
        Self::with_budget(q, first + second, cap, Some(first), FockBudget::default())
    }

    pub fn with_budget(
        q: f64,
        dim: usize,
        cap: usize,
        first_summand: Option<usize>,
        budget: FockBudget,
    ) -> Result<Self, FockError> {
        if !(-1.0..=1.0).contains(&q) {
            return Err(FockError::InvalidQ(q));
        }
        if dim == 0 {
            return Err(FockError::ZeroDimension);
        }
        if let Some(m) = first_summand {
            if m > dim {
                return Err(FockError::DimensionMismatch { expected: dim, got: m });
            }
        }
        let mut offsets = Vec::with_capacity(cap + 2);
        let mut total = 0usize;
        for n in 0..=cap {
            offsets.push(total);
            total = total
                .checked_add(checked_pow(dim, n)?)
                .ok_or(FockError::Budget { what: "Fock space dimension", needed: u128::MAX, limit: usize::MAX as u128 })?;
        }
        offsets.push(total);
        let gram = (0..=cap).map(|n| build_tn(dim, n, q, &budget)).collect::<Result<Vec<_>, _>>()?;
        Ok(FockSpace {
            q,
            dim,
            cap,
            first_summand,
            gram,
            offsets,
            budget,
        })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn budget(&self) -> &FockBudget {
        &self.budget
    }

    /// Dimension of the first summand, if a splitting was declared.
    pub fn first_summand(&self) -> Option<usize> {
        self.first_summand
    }

    /// `dimⁿ`.
    pub fn level_dim(&self, n: usize) -> usize {
        self.offsets[n + 1] - self.offsets[n]
    }

    pub fn total_dim(&self) -> usize {
        self.offsets[self.cap + 1]
    }

    pub fn offset(&self, n: usize) -> usize {
        self.offsets[n]
    }

    /// `T_n`.
    pub fn gram(&self, n: usize) -> &DMatrix<f64> {
        &self.gram[n]
    }

    /// Basis vector `e_i` of the one-particle space.
    pub fn unit(&self, i: usize) -> DVector<f64> {
        let mut v = DVector::zeros(self.dim);
        v[i] = 1.0;
        v
    }

    fn check_vector(&self, v: &FockVector) -> Result<(), FockError> {
        if v.dim != self.dim || v.cap != self.cap {
            return Err(FockError::SpaceMismatch);
        }
        Ok(())
    }

    fn check_one_particle(&self, xi: &DVector<f64>) -> Result<(), FockError> {
        if xi.len() != self.dim {
            return Err(FockError::DimensionMismatch {
                expected: self.dim,
                got: xi.len(),
            });
        }
        Ok(())
    }
}

fn checked_pow(base: usize, exp: usize) -> Result<usize, FockError> {
    base.checked_pow(exp as u32).ok_or(FockError::Budget {
        what: "tensor level dimension",
        needed: u128::MAX,
        limit: usize::MAX as u128,
    })
}

/// A vector of a truncated Fock space, all levels flattened.
#[derive(Debug, Clone, PartialEq)]
pub struct FockVector {
    dim: usize,
    cap: usize,
    data: DVector<f64>,
}

impl FockVector {
    pub fn zero(space: &FockSpace) -> Self {
        FockVector {
            dim: space.dim,
            cap: space.cap,
            data: DVector::zeros(space.total_dim()),
        }
    }

    /// The vacuum `Ω`.
    pub fn vacuum(space: &FockSpace) -> Self {
        let mut v = Self::zero(space);
        v.data[0] = 1.0;
        v
    }

    /// A vector living in a single level.
    pub fn from_level(space: &FockSpace, n: usize, coeffs: &DVector<f64>) -> Result<Self, FockError> {
        if n > space.cap {
            return Err(FockError::CapTooSmall { required: n, cap: space.cap });
        }
        if coeffs.len() != space.level_dim(n) {
            return Err(FockError::DimensionMismatch {
                expected: space.level_dim(n),
                got: coeffs.len(),
            });
        }
        let mut v = Self::zero(space);
        v.data.rows_mut(space.offset(n), coeffs.len()).copy_from(coeffs);
        Ok(v)
    }

    /// `ξ₁ ⊗ ⋯ ⊗ ξ_n` at level `n`.
    pub fn simple_tensor(space: &FockSpace, factors: &[DVector<f64>]) -> Result<Self, FockError> {
        for f in factors {
            space.check_one_particle(f)?;
        }
        let coeffs = tensor_product(factors, space.dim);
        Self::from_level(space, factors.len(), &coeffs)
    }

    pub fn from_flat(space: &FockSpace, data: DVector<f64>) -> Result<Self, FockError> {
        if data.len() != space.total_dim() {
            return Err(FockError::DimensionMismatch {
                expected: space.total_dim(),
                got: data.len(),
            });
        }
        Ok(FockVector {
            dim: space.dim,
            cap: space.cap,
            data,
        })
    }

    pub fn flat(&self) -> &DVector<f64> {
        &self.data
    }

    /// Coefficients of level `n`.
    pub fn level(&self, n: usize) -> &[f64] {
        let (start, len) = level_range(self.dim, n);
        &self.data.as_slice()[start..start + len]
    }

    fn level_mut(&mut self, n: usize) -> &mut [f64] {
        let (start, len) = level_range(self.dim, n);
        &mut self.data.as_mut_slice()[start..start + len]
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn axpy(&mut self, alpha: f64, other: &FockVector) {
        self.data.axpy(alpha, &other.data, 1.0);
    }

    pub fn scale(&mut self, alpha: f64) {
        self.data *= alpha;
    }

    /// Largest absolute coefficient difference.
    pub fn max_abs_diff(&self, other: &FockVector) -> f64 {
        (&self.data - &other.data).amax()
    }
}

fn level_range(dim: usize, n: usize) -> (usize, usize) {
    let start = (0..n).map(|k| dim.pow(k as u32)).sum();
    (start, dim.pow(n as u32))
}

/// Coefficients of `ξ₁ ⊗ ⋯ ⊗ ξ_n`, first factor most significant.
pub(crate) fn tensor_product(factors: &[DVector<f64>], dim: usize) -> DVector<f64> {
    let mut acc = DVector::from_element(1, 1.0);
    for f in factors {
        debug_assert_eq!(f.len(), dim);
        acc = acc.kronecker(f);
    }
    acc
}

/// `⟨x, y⟩_q = Σ_n ⟨T_n x_n, y_n⟩`.
pub fn q_inner(space: &FockSpace, x: &FockVector, y: &FockVector) -> Result<f64, FockError> {
    space.check_vector(x)?;
    space.check_vector(y)?;
    Ok((0..=space.cap).map(|n| level_q_inner(space, n, x.level(n), y.level(n))).sum())
}

pub(crate) fn level_q_inner(space: &FockSpace, n: usize, x: &[f64], y: &[f64]) -> f64 {
    let t = &space.gram[n];
    let xv = DVector::from_column_slice(x);
    let yv = DVector::from_column_slice(y);
    (t * xv).dot(&yv)
}

/// `‖x‖_q`, clamped at zero against rounding for degenerate `q = ±1`.
pub fn q_norm(space: &FockSpace, x: &FockVector) -> Result<f64, FockError> {
    Ok(q_inner(space, x, x)?.max(0.0).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inner_product_examples() {
        let space = FockSpace::new(0.3, 2, 3).unwrap();
        let omega = FockVector::vacuum(&space);
        assert_eq!(q_inner(&space, &omega, &omega).unwrap(), 1.0);
        let e1 = FockVector::simple_tensor(&space, &[space.unit(0)]).unwrap();
        assert_eq!(q_inner(&space, &e1, &e1).unwrap(), 1.0);
        let e12 = FockVector::simple_tensor(&space, &[space.unit(0), space.unit(1)]).unwrap();
        let e21 = FockVector::simple_tensor(&space, &[space.unit(1), space.unit(0)]).unwrap();
        assert!((q_inner(&space, &e12, &e21).unwrap() - 0.3).abs() < 1e-15);
        assert!((q_inner(&space, &e12, &e12).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn mismatched_spaces() {
        let a = FockSpace::new(0.3, 2, 3).unwrap();
        let b = FockSpace::new(0.3, 3, 3).unwrap();
        let x = FockVector::vacuum(&a);
        let y = FockVector::vacuum(&b);
        assert_eq!(q_inner(&a, &x, &y).unwrap_err(), FockError::SpaceMismatch);
    }

    #[test]
    fn invalid_parameters() {
        assert_eq!(FockSpace::new(1.5, 2, 2).unwrap_err(), FockError::InvalidQ(1.5));
        assert_eq!(FockSpace::new(0.0, 0, 2).unwrap_err(), FockError::ZeroDimension);
        let tiny = FockBudget {
            max_matrix_bytes: 1 << 30,
            max_permutation_work: 10,
        };
        assert!(matches!(
            FockSpace::with_budget(0.0, 2, 4, None, tiny),
            Err(FockError::Budget { .. })
        ));
    }

    #[test]
    fn level_layout() {
        let space = FockSpace::new(0.0, 3, 3).unwrap();
        assert_eq!(space.total_dim(), 1 + 3 + 9 + 27);
        assert_eq!(space.offset(2), 4);
        let v = FockVector::simple_tensor(&space, &[space.unit(2), space.unit(1)]).unwrap();
        assert_eq!(v.level(2)[2 * 3 + 1], 1.0);
        assert_eq!(v.flat().sum(), 1.0);
    }
}
