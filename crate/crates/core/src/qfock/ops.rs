use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};

use super::{FockError, FockSpace, FockVector};

/// A linear operator on a truncated Fock space, stored as one dense matrix
/// over all levels.
///
/// `exact_level` is the largest input level on which the truncated operator
/// agrees with the untruncated one (`None` if there is no such level).
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    dim: usize,
    cap: usize,
    matrix: DMatrix<f64>,
    exact_level: Option<usize>,
}

impl FockOperator {
    pub fn identity(space: &FockSpace) -> Result<Self, FockError> {
        space.budget().check_matrix(space.total_dim())?;
        Ok(FockOperator {
            dim: space.dim(),
            cap: space.cap(),
            matrix: DMatrix::identity(space.total_dim(), space.total_dim()),
            exact_level: Some(space.cap()),
        })
    }

    /// Materializes a linear map column by column.
    pub(crate) fn from_linear_map(
        space: &FockSpace,
        exact_level: Option<usize>,
        mut f: impl FnMut(&FockVector) -> Result<FockVector, FockError>,
    ) -> Result<Self, FockError> {
        let total = space.total_dim();
        space.budget().check_matrix(total)?;
        let mut matrix = DMatrix::zeros(total, total);
        let mut basis = FockVector::zero(space);
        for j in 0..total {
            basis.data[j] = 1.0;
            let image = f(&basis)?;
            matrix.set_column(j, &image.data);
            basis.data[j] = 0.0;
        }
        Ok(FockOperator {
            dim: space.dim(),
            cap: space.cap(),
            matrix,
            exact_level,
        })
    }

    fn same_space(&self, other: &FockOperator) -> Result<(), FockError> {
        if self.dim != other.dim || self.cap != other.cap {
            return Err(FockError::SpaceMismatch);
        }
        Ok(())
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn exact_level(&self) -> Option<usize> {
        self.exact_level
    }

    pub fn apply(&self, v: &FockVector) -> Result<FockVector, FockError> {
        if v.dim != self.dim || v.cap != self.cap {
            return Err(FockError::SpaceMismatch);
        }
        Ok(FockVector {
            dim: self.dim,
            cap: self.cap,
            data: &self.matrix * &v.data,
        })
    }

    /// `self ∘ other`. Exactness is tracked conservatively: an input level
    /// `m` is exact if `other` is exact there and `self` is exact on every
    /// level `other` can reach from `m`.
    pub fn compose(&self, other: &FockOperator) -> Result<FockOperator, FockError> {
        self.same_space(other)?;
        let raise = other.max_raise();
        let exact_level = match (self.exact_level, other.exact_level) {
            (Some(a), Some(b)) => {
                let limit = (a as isize - raise as isize).min(b as isize);
                (limit >= 0).then_some(limit as usize)
            }
            _ => None,
        };
        Ok(FockOperator {
            dim: self.dim,
            cap: self.cap,
            matrix: &self.matrix * &other.matrix,
            exact_level,
        })
    }

    pub fn add(&self, other: &FockOperator) -> Result<FockOperator, FockError> {
        self.same_space(other)?;
        Ok(FockOperator {
            dim: self.dim,
            cap: self.cap,
            matrix: &self.matrix + &other.matrix,
            exact_level: min_opt(self.exact_level, other.exact_level),
        })
    }

    pub fn sub(&self, other: &FockOperator) -> Result<FockOperator, FockError> {
        self.same_space(other)?;
        Ok(FockOperator {
            dim: self.dim,
            cap: self.cap,
            matrix: &self.matrix - &other.matrix,
            exact_level: min_opt(self.exact_level, other.exact_level),
        })
    }

    pub fn scale(&self, alpha: f64) -> FockOperator {
        FockOperator {
            matrix: &self.matrix * alpha,
            ..self.clone()
        }
    }

    /// The block mapping level `input` to level `output`.
    pub fn level_block(&self, output: usize, input: usize) -> DMatrix<f64> {
        let (r0, rn) = super::level_range(self.dim, output);
        let (c0, cn) = super::level_range(self.dim, input);
        self.matrix.view((r0, c0), (rn, cn)).into_owned()
    }

    /// Largest level shift `out - in` among nonzero blocks.
    fn max_raise(&self) -> usize {
        let mut raise = 0;
        for input in 0..=self.cap {
            for output in input + 1..=self.cap {
                if output - input > raise && self.level_block(output, input).iter().any(|&x| x != 0.0) {
                    raise = output - input;
                }
            }
        }
        raise
    }
}

fn min_opt(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        _ => None,
    }
}

pub(crate) fn apply_creation(space: &FockSpace, xi: &DVector<f64>, v: &FockVector) -> FockVector {
    let dim = space.dim();
    let mut out = FockVector::zero(space);
    for n in 0..space.cap() {
        let src = v.level(n);
        let width = src.len();
        let dst = out.level_mut(n + 1);
        for i in 0..dim {
            if xi[i] == 0.0 {
                continue;
            }
            for (r, &c) in src.iter().enumerate() {
                dst[i * width + r] += xi[i] * c;
            }
        }
    }
    out
}

pub(crate) fn apply_annihilation(space: &FockSpace, xi: &DVector<f64>, v: &FockVector) -> FockVector {
    let dim = space.dim();
    let q = space.q();
    let mut out = FockVector::zero(space);
    for n in 1..=space.cap() {
        let weights: Vec<f64> = (0..n).map(|k| q.powi(k as i32)).collect();
        let src = v.level(n).to_vec();
        let dst = out.level_mut(n - 1);
        for (idx, &c) in src.iter().enumerate() {
            if c == 0.0 {
                continue;
            }
            for (k, &w) in weights.iter().enumerate() {
                if w == 0.0 {
                    continue;
                }
                // remove tensor slot k (slot 0 most significant)
                let low_size = dim.pow((n - 1 - k) as u32);
                let digit = (idx / low_size) % dim;
                if xi[digit] == 0.0 {
                    continue;
                }
                let high = idx / (low_size * dim);
                let low = idx % low_size;
                dst[high * low_size + low] += w * xi[digit] * c;
            }
        }
    }
    out
}

pub(crate) fn apply_field(space: &FockSpace, xi: &DVector<f64>, v: &FockVector) -> FockVector {
    let mut out = apply_creation(space, xi, v);
    out.axpy(1.0, &apply_annihilation(space, xi, v));
    out
}

/// `ℓ_q(ξ)μ = ξ ⊗ μ`; the top level is sent to zero.
pub fn creation(space: &FockSpace, xi: &DVector<f64>) -> Result<FockOperator, FockError> {
    space.check_one_particle(xi)?;
    FockOperator::from_linear_map(space, space.cap().checked_sub(1), |v| Ok(apply_creation(space, xi, v)))
}

/// `ℓ_q(ξ)*(μ₁⊗⋯⊗μ_n) = Σ_k q^{k-1} ⟨μ_k, ξ⟩ μ₁⊗⋯μ̂_k⋯⊗μ_n`.
pub fn annihilation(space: &FockSpace, xi: &DVector<f64>) -> Result<FockOperator, FockError> {
    space.check_one_particle(xi)?;
    FockOperator::from_linear_map(space, Some(space.cap()), |v| Ok(apply_annihilation(space, xi, v)))
}

/// `s_q(ξ) = ℓ_q(ξ) + ℓ_q(ξ)*` for real `ξ`.
pub fn field_operator(space: &FockSpace, xi: &DVector<f64>) -> Result<FockOperator, FockError> {
    space.check_one_particle(xi)?;
    FockOperator::from_linear_map(space, space.cap().checked_sub(1), |v| Ok(apply_field(space, xi, v)))
}

/// `W_q(ξ₁⊗⋯⊗ξ_n) v`, through
/// `W(ξ⊗w) = s(ξ) W(w) − Σ_k q^{k-1} ⟨w_k, ξ⟩ W(w ∖ w_k)`.
///
/// Exact when `v` lives in levels `≤ cap - n`.
pub fn wick_apply(space: &FockSpace, factors: &[DVector<f64>], v: &FockVector) -> Result<FockVector, FockError> {
    for f in factors {
        space.check_one_particle(f)?;
    }
    space.check_vector(v)?;
    if factors.len() > space.cap() {
        return Err(FockError::CapTooSmall {
            required: factors.len(),
            cap: space.cap(),
        });
    }
    if factors.len() >= 64 {
        return Err(FockError::CapTooSmall { required: 64, cap: 63 });
    }
    let mut memo = HashMap::new();
    let full = (1u64 << factors.len()) - 1;
    Ok(wick_rec(space, factors, v, full, &mut memo))
}

fn wick_rec(
    space: &FockSpace,
    factors: &[DVector<f64>],
    v: &FockVector,
    mask: u64,
    memo: &mut HashMap<u64, FockVector>,
) -> FockVector {
    if mask == 0 {
        return v.clone();
    }
    if let Some(hit) = memo.get(&mask) {
        return hit.clone();
    }
    let first = mask.trailing_zeros() as usize;
    let rest = mask & !(1 << first);
    let inner = wick_rec(space, factors, v, rest, memo);
    let mut out = apply_field(space, &factors[first], &inner);
    let q = space.q();
    let mut k = 0;
    let mut bits = rest;
    while bits != 0 {
        let j = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        let coeff = q.powi(k) * factors[j].dot(&factors[first]);
        k += 1;
        if coeff != 0.0 {
            let reduced = wick_rec(space, factors, v, rest & !(1 << j), memo);
            out.axpy(-coeff, &reduced);
        }
    }
    memo.insert(mask, out.clone());
    out
}

/// The Wick word `W_q(ξ₁⊗⋯⊗ξ_n)`, exact on levels `≤ cap - n`.
pub fn wick(space: &FockSpace, factors: &[DVector<f64>]) -> Result<FockOperator, FockError> {
    let exact = space.cap().checked_sub(factors.len()).ok_or(FockError::CapTooSmall {
        required: factors.len(),
        cap: space.cap(),
    })?;
    FockOperator::from_linear_map(space, Some(exact), |v| wick_apply(space, factors, v))
}

/// `Γ(A) = ⊕_n A^{⊗n}` for a contraction `A` of the one-particle space.
pub fn second_quantize(space: &FockSpace, a: &DMatrix<f64>) -> Result<FockOperator, FockError> {
    let dim = space.dim();
    if a.nrows() != dim || a.ncols() != dim {
        return Err(FockError::DimensionMismatch {
            expected: dim,
            got: a.nrows().max(a.ncols()),
        });
    }
    let norm = a.clone().singular_values().max();
    if norm > 1.0 + 1e-9 {
        return Err(FockError::NormViolation(norm));
    }
    let total = space.total_dim();
    space.budget().check_matrix(total)?;
    let mut matrix = DMatrix::zeros(total, total);
    let mut power = DMatrix::from_element(1, 1, 1.0);
    for n in 0..=space.cap() {
        if n > 0 {
            power = power.kronecker(a);
        }
        let off = space.offset(n);
        matrix.view_mut((off, off), power.shape()).copy_from(&power);
    }
    Ok(FockOperator {
        dim,
        cap: space.cap(),
        matrix,
        exact_level: Some(space.cap()),
    })
}

fn splitting(space: &FockSpace) -> Result<(usize, usize), FockError> {
    let first = space.first_summand().ok_or(FockError::NoSplitting)?;
    Ok((first, space.dim() - first))
}

/// `R_t(ξ ⊕ μ) = (cos t ξ − sin t μ) ⊕ (sin t ξ + cos t μ)` on `H ⊕ H`.
pub fn rotation_matrix(space: &FockSpace, t: f64) -> Result<DMatrix<f64>, FockError> {
    let (first, second) = splitting(space)?;
    if first != second {
        return Err(FockError::UnequalSplitting { first, second });
    }
    let (s, c) = t.sin_cos();
    let mut r = DMatrix::zeros(2 * first, 2 * first);
    for i in 0..first {
        r[(i, i)] = c;
        r[(i, first + i)] = -s;
        r[(first + i, i)] = s;
        r[(first + i, first + i)] = c;
    }
    Ok(r)
}

/// `Γ(R_t)`.
pub fn rotation_deformation(space: &FockSpace, t: f64) -> Result<FockOperator, FockError> {
    second_quantize(space, &rotation_matrix(space, t)?)
}

/// `E = ⊕_n P₁^{⊗n}` with `P₁` the projection onto the first summand.
pub fn conditional_projection(space: &FockSpace) -> Result<FockOperator, FockError> {
    let (first, _) = splitting(space)?;
    let p = DMatrix::from_fn(space.dim(), space.dim(), |i, j| if i == j && i < first { 1.0 } else { 0.0 });
    second_quantize(space, &p)
}

/// Singular values (descending) of `E ∘ Γ(R_t)` restricted to level `n`
/// tensors of first-summand vectors.
pub fn deformation_profile(space: &FockSpace, t: f64, n: usize) -> Result<Vec<f64>, FockError> {
    if n > space.cap() {
        return Err(FockError::CapTooSmall { required: n, cap: space.cap() });
    }
    let (first, _) = splitting(space)?;
    let op = conditional_projection(space)?.compose(&rotation_deformation(space, t)?)?;
    let block = op.level_block(n, n);
    let dim = space.dim();
    let keep: Vec<usize> = (0..block.nrows())
        .filter(|&idx| {
            let mut rest = idx;
            (0..n).all(|_| {
                let d = rest % dim;
                rest /= dim;
                d < first
            })
        })
        .collect();
    let restricted = DMatrix::from_fn(keep.len(), keep.len(), |i, j| block[(keep[i], keep[j])]);
    let mut sv: Vec<f64> = restricted.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(sv)
}

#[cfg(test)]
mod tests {
    use super::super::{q_inner, tensor_product};
    use super::*;

    fn vec(xs: &[f64]) -> DVector<f64> {
        DVector::from_column_slice(xs)
    }

    #[test]
    fn creation_on_vacuum() {
        let space = FockSpace::new(0.2, 2, 3).unwrap();
        let l = creation(&space, &space.unit(0)).unwrap();
        let out = l.apply(&FockVector::vacuum(&space)).unwrap();
        assert_eq!(out, FockVector::simple_tensor(&space, &[space.unit(0)]).unwrap());
        assert_eq!(l.exact_level(), Some(2));
    }

    #[test]
    fn annihilation_examples() {
        let q = 0.35;
        let space = FockSpace::new(q, 2, 3).unwrap();
        let xi = vec(&[0.6, -1.3]);
        let mu = vec(&[2.0, 0.5]);
        let nu = vec(&[-1.0, 4.0]);
        let a = annihilation(&space, &xi).unwrap();
        let one = a.apply(&FockVector::simple_tensor(&space, std::slice::from_ref(&mu)).unwrap()).unwrap();
        assert!((one.level(0)[0] - mu.dot(&xi)).abs() < 1e-14);
        let two = a
            .apply(&FockVector::simple_tensor(&space, &[mu.clone(), nu.clone()]).unwrap())
            .unwrap();
        let expected = &nu * mu.dot(&xi) + &mu * (q * nu.dot(&xi));
        for i in 0..2 {
            assert!((two.level(1)[i] - expected[i]).abs() < 1e-14);
        }
    }

    #[test]
    fn field_moments() {
        let q = -0.4;
        let space = FockSpace::new(q, 1, 4).unwrap();
        let s = field_operator(&space, &space.unit(0)).unwrap();
        let mut v = FockVector::vacuum(&space);
        assert_eq!(s.apply(&v).unwrap().level(1), &[1.0]);
        let mut moments = Vec::new();
        for _ in 0..4 {
            v = s.apply(&v).unwrap();
            moments.push(v.level(0)[0]);
        }
        assert!((moments[1] - 1.0).abs() < 1e-14);
        assert!((moments[3] - (2.0 + q)).abs() < 1e-14);
    }

    #[test]
    fn wick_defining_property() {
        let space = FockSpace::new(0.6, 2, 4).unwrap();
        let factors = [vec(&[1.0, 0.5]), vec(&[-0.3, 2.0]), vec(&[1.0, 0.0])];
        let w = wick(&space, &factors).unwrap();
        let out = w.apply(&FockVector::vacuum(&space)).unwrap();
        let expected = FockVector::simple_tensor(&space, &factors).unwrap();
        assert!(out.max_abs_diff(&expected) < 1e-12);
        assert_eq!(w.exact_level(), Some(1));
    }

    #[test]
    fn wick_of_one_vector_is_field() {
        let space = FockSpace::new(0.3, 2, 3).unwrap();
        let xi = vec(&[0.2, -0.7]);
        assert_eq!(wick(&space, std::slice::from_ref(&xi)).unwrap().matrix(), field_operator(&space, &xi).unwrap().matrix());
        assert!(matches!(
            wick(&space, &[xi.clone(), xi.clone(), xi.clone(), xi]),
            Err(FockError::CapTooSmall { required: 4, cap: 3 })
        ));
    }

    #[test]
    fn second_quantization_examples() {
        let space = FockSpace::new(0.5, 2, 3).unwrap();
        let id = second_quantize(&space, &DMatrix::identity(2, 2)).unwrap();
        assert_eq!(id, FockOperator::identity(&space).unwrap());
        let t = 0.7f64;
        let scaled = second_quantize(&space, &(DMatrix::identity(2, 2) * t.cos())).unwrap();
        for n in 0..=3 {
            let block = scaled.level_block(n, n);
            let expected = DMatrix::identity(block.nrows(), block.ncols()) * t.cos().powi(n as i32);
            assert!((block - expected).amax() < 1e-15);
        }
        assert!(matches!(
            second_quantize(&space, &(DMatrix::identity(2, 2) * 1.5)),
            Err(FockError::NormViolation(_))
        ));
    }

    #[test]
    fn rotation_and_projection() {
        let space = FockSpace::split(0.4, 1, 1, 3).unwrap();
        let r = rotation_deformation(&space, std::f64::consts::FRAC_PI_2).unwrap();
        let out = r.apply(&FockVector::simple_tensor(&space, &[space.unit(0)]).unwrap()).unwrap();
        assert!(out.max_abs_diff(&FockVector::simple_tensor(&space, &[space.unit(1)]).unwrap()) < 1e-15);
        let back = r.compose(&rotation_deformation(&space, -std::f64::consts::FRAC_PI_2).unwrap()).unwrap();
        assert!((back.matrix() - DMatrix::identity(space.total_dim(), space.total_dim())).amax() < 1e-12);

        let e = conditional_projection(&space).unwrap();
        let omega = FockVector::vacuum(&space);
        assert_eq!(e.apply(&omega).unwrap(), omega);
        let mixed = FockVector::simple_tensor(&space, &[space.unit(0), space.unit(1)]).unwrap();
        assert_eq!(e.apply(&mixed).unwrap(), FockVector::zero(&space));

        let unsplit = FockSpace::new(0.4, 2, 2).unwrap();
        assert_eq!(rotation_deformation(&unsplit, 0.1).unwrap_err(), FockError::NoSplitting);
    }

    #[test]
    fn profile_is_cosine_power() {
        let space = FockSpace::split(0.3, 2, 2, 3).unwrap();
        let t = 0.9f64;
        for n in 0..=3 {
            let sv = deformation_profile(&space, t, n).unwrap();
            assert_eq!(sv.len(), 2usize.pow(n as u32));
            assert!(sv.iter().all(|s| (s - t.cos().powi(n as i32)).abs() < 1e-12));
        }
    }

    #[test]
    fn creation_annihilation_adjoint() {
        let space = FockSpace::new(0.7, 2, 3).unwrap();
        let xi = vec(&[0.4, 1.1]);
        let mu = FockVector::from_level(&space, 1, &tensor_product(&[vec(&[1.0, -2.0])], 2)).unwrap();
        let nu = FockVector::from_level(&space, 2, &vec(&[0.3, 1.0, -0.5, 2.0])).unwrap();
        let lhs = q_inner(&space, &apply_creation(&space, &xi, &mu), &nu).unwrap();
        let rhs = q_inner(&space, &mu, &apply_annihilation(&space, &xi, &nu)).unwrap();
        assert!((lhs - rhs).abs() < 1e-12);
    }
}
