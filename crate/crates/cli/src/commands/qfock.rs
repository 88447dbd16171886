use serde::Serialize;
use wcorr::qfock::{
    decay_profile, deformation_profile, pair_partition_oracle, tn_spectrum, vacuum_moment, DecayConfig, FockSpace,
};

use crate::error::CliError;
use crate::input::fock_budget;
use crate::Outcome;

/// Tolerance for identities that hold exactly in exact arithmetic.
const EXACT_TOL: f64 = 1e-10;
const MOMENT_TOL: f64 = 1e-9;

fn to_csv<R: Serialize>(rows: &[R]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Input(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Input(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is UTF-8"))
}

#[derive(Serialize)]
struct TnRow {
    q: f64,
    n: usize,
    dim: usize,
    min_eig: f64,
    max_eig: f64,
}

pub fn tn(qs: &[f64], dim: usize, n_max: usize) -> Result<Outcome, CliError> {
    let budget = fock_budget()?;
    let mut rows = Vec::new();
    for &q in qs {
        for n in 1..=n_max {
            let s = tn_spectrum(dim, n, q, &budget)?;
            rows.push(TnRow {
                q,
                n,
                dim,
                min_eig: s.min_eig,
                max_eig: s.max_eig,
            });
        }
    }
    let passed = rows.iter().all(|r| r.min_eig >= -EXACT_TOL);
    Ok(Outcome {
        report: to_csv(&rows)?,
        passed,
    })
}

#[derive(Serialize)]
struct MomentRow {
    q: f64,
    power: usize,
    moment: f64,
    oracle: f64,
    diff: f64,
}

pub fn moments(qs: &[f64], powers: &[usize], dim: usize) -> Result<Outcome, CliError> {
    let budget = fock_budget()?;
    let cap = powers.iter().copied().max().unwrap_or(0);
    let mut rows = Vec::new();
    for &q in qs {
        let space = FockSpace::with_budget(q, dim, cap, None, budget)?;
        let xi = space.unit(0);
        for &power in powers {
            let moment = vacuum_moment(&space, &xi, power)?;
            let oracle = pair_partition_oracle(q, power);
            rows.push(MomentRow {
                q,
                power,
                moment,
                oracle,
                diff: (moment - oracle).abs(),
            });
        }
    }
    let passed = rows.iter().all(|r| r.diff <= MOMENT_TOL);
    Ok(Outcome {
        report: to_csv(&rows)?,
        passed,
    })
}

pub fn decay(
    qs: &[f64],
    k: usize,
    n_max: usize,
    dim_h: usize,
    dim_k: usize,
    samples: usize,
    seed: u64,
) -> Result<Outcome, CliError> {
    let budget = fock_budget()?;
    let mut rows = Vec::new();
    for &q in qs {
        let cfg = DecayConfig {
            q,
            k,
            n_max,
            dim_h,
            dim_k,
            samples,
            seed,
        };
        let profile = decay_profile(&cfg, &budget)?;
        eprintln!("fitted C (q = {q}, k = {k}): {}", profile.fitted_c);
        rows.extend(profile.rows);
    }
    Ok(Outcome::ok(to_csv(&rows)?))
}

#[derive(Serialize)]
struct DeformRow {
    t: f64,
    n: usize,
    expected: f64,
    min_sv: f64,
    max_sv: f64,
    max_err: f64,
}

pub fn deform(ts: &[f64], q: f64, dim: usize, n_max: usize) -> Result<Outcome, CliError> {
    let budget = fock_budget()?;
    let space = FockSpace::with_budget(q, 2 * dim, n_max, Some(dim), budget)?;
    let mut rows = Vec::new();
    for &t in ts {
        for n in 0..=n_max {
            let sv = deformation_profile(&space, t, n)?;
            let expected = t.cos().powi(n as i32);
            rows.push(DeformRow {
                t,
                n,
                expected,
                min_sv: sv.iter().copied().fold(f64::INFINITY, f64::min),
                max_sv: sv.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                max_err: sv.iter().map(|s| (s - expected.abs()).abs()).fold(0.0, f64::max),
            });
        }
    }
    let passed = rows.iter().all(|r| r.max_err <= EXACT_TOL);
    Ok(Outcome {
        report: to_csv(&rows)?,
        passed,
    })
}
