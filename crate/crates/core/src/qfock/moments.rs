use nalgebra::DVector;

use super::ops::apply_field;
use super::{FockError, FockSpace, FockVector};

/// `⟨Ω, s_q(ξ)^p Ω⟩_q` for a unit vector `ξ`. Odd powers vanish by symmetry
/// and return 0 without computation.
pub fn vacuum_moment(space: &FockSpace, xi: &DVector<f64>, power: usize) -> Result<f64, FockError> {
    space.check_one_particle(xi)?;
    let norm = xi.norm();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(FockError::NotUnit(norm));
    }
    if power % 2 == 1 {
        return Ok(0.0);
    }
    if power > space.cap() {
        return Err(FockError::CapTooSmall { required: power, cap: space.cap() });
    }
    let mut v = FockVector::vacuum(space);
    for _ in 0..power {
        v = apply_field(space, xi, &v);
    }
    // T_0 = 1, so the q-inner product with Ω is the level-0 coefficient
    Ok(v.level(0)[0])
}

/// Every perfect matching of `0..points` together with its crossing count.
/// A crossing is a pair of arcs `(a, b)`, `(c, d)` with `a < c < b < d`.
pub fn pairings_with_crossings(points: usize) -> Vec<(Vec<(usize, usize)>, usize)> {
    fn go(free: &[usize], current: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
        let Some((&first, rest)) = free.split_first() else {
            out.push(current.clone());
            return;
        };
        for i in 0..rest.len() {
            current.push((first, rest[i]));
            let remaining: Vec<usize> = rest.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &p)| p).collect();
            go(&remaining, current, out);
            current.pop();
        }
    }
    if points % 2 == 1 {
        return Vec::new();
    }
    let mut matchings = Vec::new();
    let points: Vec<usize> = (0..points).collect();
    go(&points, &mut Vec::new(), &mut matchings);
    matchings
        .into_iter()
        .map(|m| {
            let mut crossings = 0;
            for (i, &(a, b)) in m.iter().enumerate() {
                for &(c, d) in &m[i + 1..] {
                    if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                        crossings += 1;
                    }
                }
            }
            (m, crossings)
        })
        .collect()
}

/// `Σ_π q^{cr(π)}` over pair partitions of `power` points.
pub fn pair_partition_oracle(q: f64, power: usize) -> f64 {
    pairings_with_crossings(power)
        .iter()
        .map(|(_, c)| q.powi(*c as i32))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_counts() {
        assert_eq!(pairings_with_crossings(4).len(), 3);
        assert_eq!(pairings_with_crossings(6).len(), 15);
        assert_eq!(pairings_with_crossings(8).len(), 105);
        let mut hist = [0usize; 4];
        for (_, c) in pairings_with_crossings(6) {
            hist[c] += 1;
        }
        assert_eq!(hist, [5, 6, 3, 1]);
        assert_eq!(pair_partition_oracle(0.5, 4), 2.5);
    }

    #[test]
    fn moments_match_examples() {
        let q = 0.3;
        let space = FockSpace::new(q, 2, 6).unwrap();
        let xi = DVector::from_column_slice(&[0.6, 0.8]);
        assert!((vacuum_moment(&space, &xi, 2).unwrap() - 1.0).abs() < 1e-14);
        assert!((vacuum_moment(&space, &xi, 4).unwrap() - (2.0 + q)).abs() < 1e-14);
        let six = 5.0 + 6.0 * q + 3.0 * q * q + q * q * q;
        assert!((vacuum_moment(&space, &xi, 6).unwrap() - six).abs() < 1e-13);
        assert_eq!(vacuum_moment(&space, &xi, 5).unwrap(), 0.0);
        assert!(matches!(vacuum_moment(&space, &xi, 8), Err(FockError::CapTooSmall { .. })));
        assert!(matches!(
            vacuum_moment(&space, &DVector::from_column_slice(&[1.0, 1.0]), 2),
            Err(FockError::NotUnit(_))
        ));
    }
}
