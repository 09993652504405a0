//! Numerical verification of the identities: a catalog of checks, each run
//! over a deterministic sample set and reduced to a maximum relative error.

mod checks;
pub mod sampling;

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use checks::{CheckFn, Sample};

pub use checks::{half_generators, lens_point, quarter_generators};

pub const DEFAULT_SEED: u64 = 1729;

/// One catalog entry.
#[derive(Debug, Clone, Copy)]
pub struct CheckSpec {
    pub id: &'static str,
    pub samples: usize,
    pub tolerance: f64,
    pub region: &'static str,
    run: CheckFn,
}

macro_rules! spec {
    ($id:literal, $n:expr, $tol:expr, $region:literal, $f:path) => {
        CheckSpec { id: $id, samples: $n, tolerance: $tol, region: $region, run: $f }
    };
}

pub const CATALOG: &[CheckSpec] = &[
    spec!("jacobi", 200, 1e-9, "tau in D(2)", checks::jacobi),
    spec!("jacobi-ext", 100, 1e-8, "g tau0, g a word of length <= 8 in Gamma(2,4), tau0 in D(2)", checks::jacobi_ext),
    spec!("quarter", 200, 1e-9, "tau in D_12", checks::quarter),
    spec!("three-quarter", 200, 1e-8, "tau in D_12, |tau - i| >= 0.1", checks::three_quarter),
    spec!("quarter-ext", 100, 1e-8, "g tau0, g a word of length <= 8 in <T^2, iJ>, tau0 in D_12", checks::quarter_ext),
    spec!("twice", 500, 1e-12, "|Re tau| <= 1, Im tau in [0.3, 10]", checks::twice),
    spec!("j-act", 200, 1e-11, "|Re tau| <= 1, Im tau in [0.3, 5]", checks::j_act),
    spec!("transform-quarter", 50, 1e-9, "w on a uniform grid of [0.1, 1.9]", checks::transform_quarter_check),
    spec!("factor-g2", 1000, 1e-13, "words of length <= 8 in <T^2, iJ>, |Re tau| <= 1, Im tau in [0.3, 5]", checks::factor_g2),
    spec!("monodromy-closure", 1000, 0.0, "words of length <= 16 in both monodromy groups", checks::monodromy_closure),
    spec!("gauss-kummer", 50, 1e-7, "a, b in [0.05, 1.5], c - a - b in [0.75, 2.5]", checks::gauss_kummer_check),
    spec!("euler-oracle", 5, 1e-6, "z in {-0.5, 0, 0.25, 0.5, 0.75}", checks::euler_oracle),
    spec!("schwarz-half", 49, 1e-8, "grid on |z| < 1, |z - 1| < 1", checks::schwarz_half_check),
    spec!("schwarz-quarter", 49, 1e-8, "grid on |z| < 1, |z - 1| < 1", checks::schwarz_quarter_check),
    spec!("agm-hgf", 200, 1e-9, "y/x log-uniform on [0.02, 50]", checks::agm_hgf),
    spec!("mu-limit", 200, 1e-8, "y/x uniform on (-1, 20]", checks::mu_limit),
    spec!("mean-properties", 1000, 1e-14, "one pair per domain of each mean", checks::mean_properties),
    spec!("theta-trace", 20, 1e-8, "y/x uniform on [0.02, 0.98]", checks::theta_trace),
];

pub fn find(id: &str) -> Option<&'static CheckSpec> {
    CATALOG.iter().find(|s| s.id == id)
}

/// Result of one identity check, in the report schema.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub identity_id: String,
    pub samples: usize,
    pub max_rel_err: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub seed: u64,
    pub wall_ms: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub report: IdentityReport,
    /// Samples that fell outside the identity's statement and were not scored.
    pub skipped: usize,
    /// Samples whose evaluation returned an error; each counts as an infinite error.
    pub errors: Vec<String>,
}

/// Run check `id` over `samples` points (the catalog count if `None`) with
/// tolerance `tol` (the catalog value if `None`).
///
/// Each sample draws from its own stream keyed by `(seed, id, index)`, so the
/// outcome is independent of thread scheduling.
pub fn run_check(id: &str, samples: Option<usize>, seed: u64, tol: Option<f64>) -> Result<CheckOutcome> {
    let spec = find(id).ok_or_else(|| Error::InvalidParameter(format!("unknown identity id {id:?}")))?;
    let n = samples.unwrap_or(spec.samples);
    let tolerance = tol.unwrap_or(spec.tolerance);
    if n == 0 {
        return Err(Error::InvalidParameter("samples must be positive".into()));
    }
    if !(tolerance >= 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance must be non-negative, got {tolerance}")));
    }
    let start = Instant::now();
    let results: Vec<Result<Sample>> = (0..n)
        .into_par_iter()
        .map(|i| (spec.run)(&mut sampling::sample_rng(seed, spec.id, i), i, n))
        .collect();

    let mut max_err = 0.0f64;
    let mut skipped = 0;
    let mut errors = Vec::new();
    for r in results {
        match r {
            Ok(Sample::Err(e)) if e.is_nan() => max_err = f64::INFINITY,
            Ok(Sample::Err(e)) => max_err = max_err.max(e),
            Ok(Sample::Skipped) => skipped += 1,
            Err(e) => {
                max_err = f64::INFINITY;
                errors.push(e.to_string());
            }
        }
    }
    let report = IdentityReport {
        identity_id: spec.id.to_string(),
        samples: n,
        max_rel_err: max_err,
        tolerance,
        passed: max_err <= tolerance,
        seed,
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
    };
    Ok(CheckOutcome { report, skipped, errors })
}
