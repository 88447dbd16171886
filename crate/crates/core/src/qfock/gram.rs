use nalgebra::{DMatrix, SymmetricEigen};

use super::{FockBudget, FockError};

/// `#{(i, j) | i < j, σ(i) > σ(j)}`.
pub fn inversions(perm: &[usize]) -> usize {
    let mut count = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                count += 1;
            }
        }
    }
    count
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// `T_n = Σ_σ q^{inv σ} π_σ` on `(Rᵈ)^{⊗n}`, where `π_σ` moves tensor
/// factor `i` to slot `σ(i)`. Since `inv σ = inv σ⁻¹` the convention for
/// `π_σ` does not affect the sum.
pub fn build_tn(dim: usize, n: usize, q: f64, budget: &FockBudget) -> Result<DMatrix<f64>, FockError> {
    let size = (dim as u128).pow(n as u32);
    budget.check("T_n summation", factorial(n) * size, budget.max_permutation_work)?;
    budget.check_matrix(size as usize)?;
    let size = size as usize;
    let mut t = DMatrix::zeros(size, size);
    let mut digits = vec![0usize; n];
    let mut moved = vec![0usize; n];
    for sigma in permutations(n) {
        let weight = q.powi(inversions(&sigma) as i32);
        if weight == 0.0 {
            continue;
        }
        for col in 0..size {
            let mut rest = col;
            for slot in (0..n).rev() {
                digits[slot] = rest % dim;
                rest /= dim;
            }
            for i in 0..n {
                moved[sigma[i]] = digits[i];
            }
            let row = moved.iter().fold(0, |acc, &d| acc * dim + d);
            t[(row, col)] += weight;
        }
    }
    Ok(t)
}

/// Extreme eigenvalues of `T_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct TnSpectrum {
    pub min_eig: f64,
    pub max_eig: f64,
    /// All eigenvalues in increasing order.
    pub eigenvalues: Vec<f64>,
}

pub fn tn_spectrum(dim: usize, n: usize, q: f64, budget: &FockBudget) -> Result<TnSpectrum, FockError> {
    if !(-1.0..=1.0).contains(&q) {
        return Err(FockError::InvalidQ(q));
    }
    let t = build_tn(dim, n, q, budget)?;
    let mut eigenvalues: Vec<f64> = SymmetricEigen::new(t).eigenvalues.iter().copied().collect();
    eigenvalues.sort_by(f64::total_cmp);
    Ok(TnSpectrum {
        min_eig: eigenvalues[0],
        max_eig: *eigenvalues.last().unwrap(),
        eigenvalues,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inversion_examples() {
        assert_eq!(inversions(&[0, 1, 2, 3]), 0);
        assert_eq!(inversions(&[3, 2, 1, 0]), 6);
        assert_eq!(inversions(&[1, 0, 2]), 1);
    }

    #[test]
    fn permutation_enumeration() {
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
    }

    #[test]
    fn t1_is_identity() {
        let t = build_tn(3, 1, 0.7, &FockBudget::default()).unwrap();
        assert_eq!(t, DMatrix::identity(3, 3));
    }

    #[test]
    fn t2_is_identity_plus_flip() {
        let q = 0.4;
        let t = build_tn(2, 2, q, &FockBudget::default()).unwrap();
        let expected = DMatrix::from_row_slice(
            4,
            4,
            &[1.0, 0.0, 0.0, 0.0, 0.0, 1.0, q, 0.0, 0.0, q, 1.0, 0.0, 0.0, 0.0, 0.0, 1.0],
        );
        // diagonal entries e_i⊗e_i pick up q from the flip as well
        let mut expected = expected;
        expected[(0, 0)] += q;
        expected[(3, 3)] += q;
        assert!((t - expected).amax() < 1e-15);
    }

    #[test]
    fn symmetrizer_at_q_one() {
        let s = tn_spectrum(2, 3, 1.0, &FockBudget::default()).unwrap();
        for e in s.eigenvalues {
            assert!(e.abs() < 1e-10 || (e - 6.0).abs() < 1e-10, "{e}");
        }
    }

    #[test]
    fn budget_is_enforced() {
        let b = FockBudget {
            max_matrix_bytes: 100,
            max_permutation_work: u128::MAX,
        };
        assert!(matches!(build_tn(2, 3, 0.0, &b), Err(FockError::Budget { .. })));
    }
}
