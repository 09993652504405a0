//! Classical means, the auxiliary functions `mu0` and `nu`, the mean pair
//! `(mu1, mu2)`, and the iterations built from them.
//!
//! `mu1(x, y) = m_A(x, mu0(x, y))` and `mu2(x, y) = nu(x, mu0(x, y))` with
//! `mu0 = m_G(x, m_A(x, y))` and `nu = 2 m_H - m_A`. Iterating
//! `(x, y) -> (mu1, mu2)` converges quadratically to
//! `x_N / F(1/4, 1/4, 1; 1 - y_N^2 / x_N^2)`.

use crate::error::{Error, Result};
use crate::hypergeometric::{hgf, HParams};
use crate::theta::{theta_all, Tau};
use crate::Cx;

pub const ITERATE_TOL: f64 = 1e-14;
pub const ITERATE_CAP: usize = 64;

/// Slack allowed in the monotonicity check of a trace, relative to `x_n`.
const MONOTONE_SLACK: f64 = 4.0 * f64::EPSILON;

/// Cones `S_I = {(x, r x) : x > 0, r in I}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    /// `x > 0`, `x + y > 0`.
    SMinus1Inf,
    /// `-x < y <= x`.
    SMinus1To1,
    /// `0 < y < 17 x`.
    S0To17,
    /// `x/3 < y < 3x`.
    SThirdTo3,
}

pub fn domain_contains(d: Domain, x: f64, y: f64) -> bool {
    if !(x > 0.0 && y.is_finite() && x.is_finite()) {
        return false;
    }
    match d {
        Domain::SMinus1Inf => x + y > 0.0,
        Domain::SMinus1To1 => -x < y && y <= x,
        Domain::S0To17 => 0.0 < y && y < 17.0 * x,
        Domain::SThirdTo3 => x / 3.0 < y && y < 3.0 * x,
    }
}

fn require(d: Domain, x: f64, y: f64, what: &str) -> Result<()> {
    if domain_contains(d, x, y) {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what}({x}, {y}) is outside its domain {d:?}")))
    }
}

fn require_positive(x: f64, y: f64, what: &str) -> Result<()> {
    if x > 0.0 && y > 0.0 && x.is_finite() && y.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!("{what} needs x, y > 0, got ({x}, {y})")))
    }
}

pub fn m_arith(x: f64, y: f64) -> f64 {
    (x + y) / 2.0
}

pub fn m_geom(x: f64, y: f64) -> Result<f64> {
    require_positive(x, y, "m_geom")?;
    Ok((x * y).sqrt())
}

pub fn m_harm(x: f64, y: f64) -> Result<f64> {
    require_positive(x, y, "m_harm")?;
    Ok(2.0 * x * y / (x + y))
}

/// `m_G(x, m_A(x, y)) = sqrt(x (x + y) / 2)`.
pub fn mu0(x: f64, y: f64) -> Result<f64> {
    require(Domain::SMinus1Inf, x, y, "mu0")?;
    Ok((x * (x + y) / 2.0).sqrt())
}

/// `2 m_H(x, y) - m_A(x, y) = (6xy - x^2 - y^2) / (2(x + y))`.
pub fn nu(x: f64, y: f64) -> Result<f64> {
    require_positive(x, y, "nu")?;
    Ok((6.0 * x * y - x * x - y * y) / (2.0 * (x + y)))
}

/// `(2x + sqrt(2x(x + y))) / 4`.
pub fn mu1(x: f64, y: f64) -> Result<f64> {
    require(Domain::SMinus1Inf, x, y, "mu1")?;
    Ok((2.0 * x + (2.0 * x * (x + y)).sqrt()) / 4.0)
}

/// `x (6 sqrt(2x(x+y)) - y - 3x) / (2 (2x + sqrt(2x(x+y))))`.
///
/// When `x + y` is tiny relative to `x` the composed form `nu(x, mu0(x, y))`
/// is used instead; it avoids subtracting nearly equal terms in `y + 3x`
/// against `6 sqrt(...)`.
pub fn mu2(x: f64, y: f64) -> Result<f64> {
    require(Domain::SMinus1Inf, x, y, "mu2")?;
    if x + y < 1e-3 * x {
        return nu(x, mu0(x, y)?);
    }
    let r = (2.0 * x * (x + y)).sqrt();
    Ok(x * (6.0 * r - y - 3.0 * x) / (2.0 * (2.0 * x + r)))
}

/// Arithmetic-geometric mean, iterated until `|x_n - y_n| <= tol x_n`.
pub fn agm(x: f64, y: f64, tol: f64) -> Result<f64> {
    require_positive(x, y, "agm")?;
    if !(tol > 0.0) {
        return Err(Error::Domain("agm tolerance must be positive".into()));
    }
    let (mut a, mut b) = (x, y);
    for _ in 0..ITERATE_CAP {
        if (a - b).abs() <= tol * a {
            return Ok(a);
        }
        let (na, nb) = (m_arith(a, b), (a * b).sqrt());
        a = na;
        b = nb;
    }
    Err(Error::IterationCap(ITERATE_CAP))
}

/// A run of the `(mu1, mu2)` iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct IterTrace {
    /// `(x_0, y_0), (x_1, y_1), ...` up to the stopping index.
    pub pairs: Vec<(f64, f64)>,
    /// First index with `0 < y_n <= x_n`.
    pub n_index: usize,
    pub limit: f64,
    pub iterations: usize,
}

/// Iterate `(x, y) -> (mu1(x, y), mu2(x, y))` until `|x_n - y_n| <= tol x_n`.
///
/// The trace is checked for `y_n <= y_{n+1} <= x_{n+1} <= x_n` from
/// `max(N, 1)` on (with a few ulps of slack); a violation is reported as an
/// invariant error.
pub fn mu_iterate(x: f64, y: f64, tol: f64, cap: usize) -> Result<IterTrace> {
    require(Domain::SMinus1Inf, x, y, "mu_iterate")?;
    if !(tol > 0.0) {
        return Err(Error::Domain("iteration tolerance must be positive".into()));
    }
    let mut pairs = vec![(x, y)];
    let (mut a, mut b) = (x, y);
    while (a - b).abs() > tol * a {
        if pairs.len() > cap {
            return Err(Error::IterationCap(cap));
        }
        let (na, nb) = (mu1(a, b)?, mu2(a, b)?);
        a = na;
        b = nb;
        pairs.push((a, b));
    }
    let n_index = pairs
        .iter()
        .position(|&(xn, yn)| 0.0 < yn && yn <= xn)
        .ok_or_else(|| Error::InvariantViolation("no index with 0 < y_n <= x_n".into()))?;
    check_monotone(&pairs, n_index.max(1))?;
    let iterations = pairs.len() - 1;
    Ok(IterTrace { pairs, n_index, limit: a, iterations })
}

fn check_monotone(pairs: &[(f64, f64)], from: usize) -> Result<()> {
    for n in from..pairs.len().saturating_sub(1) {
        let (xn, yn) = pairs[n];
        let (xm, ym) = pairs[n + 1];
        let slack = MONOTONE_SLACK * xn;
        if !(yn <= ym + slack && ym <= xm + slack && xm <= xn + slack) {
            return Err(Error::InvariantViolation(format!(
                "trace not nested at n = {n}: ({xn}, {yn}) -> ({xm}, {ym})"
            )));
        }
    }
    Ok(())
}

/// `psi(x, y) = x / F(1/4, 1/4, 1; 1 - y^2/x^2)`, the invariant of one
/// `(mu1, mu2)` step.
pub fn psi_quarter(x: f64, y: f64) -> Result<f64> {
    if !(x > 0.0 && y.is_finite()) {
        return Err(Error::Domain(format!("psi needs x > 0, got ({x}, {y})")));
    }
    let p = HParams::real(0.25, 0.25, 1.0)?;
    let f = hgf(&p, Cx::new(1.0 - (y / x) * (y / x), 0.0))?.value;
    Ok(x / f.re)
}

/// The limit of a trace from `x_N / F(1/4, 1/4, 1; 1 - y_N^2 / x_N^2)`.
pub fn limit_via_hgf(trace: &IterTrace) -> Result<f64> {
    let &(x, y) = trace
        .pairs
        .get(trace.n_index)
        .ok_or_else(|| Error::Domain("trace index N is out of range".into()))?;
    psi_quarter(x, y)
}

/// Result of matching a `(mu1, mu2)` trace with theta constants.
#[derive(Debug, Clone, PartialEq)]
pub struct ThetaTraceReport {
    /// `t` with `tau = t i`.
    pub t: f64,
    /// `x / theta_00(tau)^2`.
    pub xi: f64,
    /// `|x_{N+k} - xi theta_00(2^k tau)^2| / x_{N+k}` for `k = 0..=4`.
    pub rel_errors: Vec<f64>,
    pub max_rel_err: f64,
}

/// Steps compared by [`theta_trace_check`].
pub const THETA_TRACE_STEPS: usize = 5;

/// For `0 < y < x`, find `tau = t i` with `zeta(tau) = 1 - y^2/x^2` and check
/// `x_k = xi theta_00(2^k tau)^2` along the trace started at `(x, y)`.
///
/// On the imaginary axis `zeta = 1 - w^2` with
/// `w = (theta_01^4 - theta_10^4) / theta_00^4`, which increases from `0` at
/// `t = 1` toward `1`. Bisection is done on `w = y/x`, which is well
/// conditioned where `zeta` is close to `1`.
pub fn theta_trace_check(x: f64, y: f64) -> Result<ThetaTraceReport> {
    if !(0.0 < y && y < x && x.is_finite()) {
        return Err(Error::Domain(format!("theta_trace_check needs 0 < y < x, got ({x}, {y})")));
    }
    let target = y / x;
    let w_at = |t: f64| -> Result<f64> {
        let th = theta_all(Tau::from_parts(0.0, t)?)?;
        let (a, b, c) = (th.t00.re.powi(4), th.t01.re.powi(4), th.t10.re.powi(4));
        Ok((b - c) / a)
    };
    let (mut lo, mut hi) = (1.0, 20.0);
    let (w_lo, w_hi) = (w_at(lo)?, w_at(hi)?);
    if !(w_lo <= target && target <= w_hi) {
        return Err(Error::RootNotBracketed(format!("y/x = {target} outside [{w_lo}, {w_hi}] on t in [1, 20]")));
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let w_mid = w_at(mid)?;
        if w_mid < w_lo.min(target) - 1e-15 {
            return Err(Error::InvariantViolation("w(t i) is not increasing on [1, 20]".into()));
        }
        if w_mid < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let t = 0.5 * (lo + hi);
    let th00 = |k: i32| -> Result<f64> {
        let th = theta_all(Tau::from_parts(0.0, t * 2f64.powi(k))?)?;
        Ok(th.t00.re * th.t00.re)
    };
    let xi = x / th00(0)?;
    let mut pairs = vec![(x, y)];
    let (mut a, mut b) = (x, y);
    for _ in 1..THETA_TRACE_STEPS {
        let (na, nb) = (mu1(a, b)?, mu2(a, b)?);
        a = na;
        b = nb;
        pairs.push((a, b));
    }
    let mut rel_errors = Vec::with_capacity(THETA_TRACE_STEPS);
    for (k, &(xk, _)) in pairs.iter().enumerate() {
        let predicted = xi * th00(k as i32)?;
        rel_errors.push((xk - predicted).abs() / xk);
    }
    let max_rel_err = rel_errors.iter().cloned().fold(0.0, f64::max);
    Ok(ThetaTraceReport { t, xi, rel_errors, max_rel_err })
}
