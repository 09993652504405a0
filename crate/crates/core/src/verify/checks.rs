//! One function per catalog entry, each evaluating a single sample.

use std::f64::consts::SQRT_2;

use rand::Rng;

use super::sampling::{log_uniform, tau_in_d12, tau_in_d2, tau_strip, uniform, word_and_point, SampleRng};
use crate::error::{Error, Result};
use crate::hypergeometric::{
    circuit_matrices, conjugate_by_p, euler_f2, gauss_kummer, hgf, hgf_continued, round_to_gmat, transform_quarter,
    HParams,
};
use crate::means::{
    agm, domain_contains, limit_via_hgf, m_arith, m_geom, m_harm, mu0, mu1, mu2, mu_iterate, nu, theta_trace_check,
    Domain, ITERATE_CAP, ITERATE_TOL,
};
use crate::modular::{factor_check, in_gamma24, in_gamma24_ij, word_sample_with, GMat};
use crate::scalar::beta_real;
use crate::theta::{
    jacobi_gap, lambda_of, schwarz_half, schwarz_quarter, schwarz_quarter_alt, theta_all, theta_double, zeta_of,
    Tau,
};
use crate::Cx;

/// Outcome of one sample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Sample {
    Err(f64),
    /// The sample falls outside the identity's statement (e.g. on a branch cut).
    Skipped,
}

pub type CheckFn = fn(&mut SampleRng, usize, usize) -> Result<Sample>;

fn rel(value: Cx, reference: Cx) -> f64 {
    (value - reference).norm() / reference.norm()
}

fn one() -> Cx {
    Cx::new(1.0, 0.0)
}

/// `(M0, M1)` of `(1/2, 1/2, 1)` as exact matrices.
pub fn half_generators() -> Result<[GMat; 2]> {
    let (m0, m1) = circuit_matrices(&HParams::real(0.5, 0.5, 1.0)?);
    Ok([round_to_gmat(&m0, 1e-12)?, round_to_gmat(&m1, 1e-12)?])
}

/// `P M0 P^-1`, `P M1 P^-1` for `(1/4, 1/4, 1)`.
pub fn quarter_generators() -> Result<[GMat; 2]> {
    let (m0, m1) = circuit_matrices(&HParams::real(0.25, 0.25, 1.0)?);
    Ok([conjugate_by_p(&round_to_gmat(&m0, 1e-12)?)?, conjugate_by_p(&round_to_gmat(&m1, 1e-12)?)?])
}

/// `z` on the cut `[1, inf)` to within rounding.
fn on_cut(z: Cx) -> bool {
    z.re >= 1.0 && z.im.abs() <= 1e-9 * z.norm()
}

pub fn jacobi(rng: &mut SampleRng, _: usize, _: usize) -> Result<Sample> {
    let t = theta_all(tau_in_d2(rng)?)?;
    let f = hgf(&HParams::real(0.5, 0.5, 1.0)?, lambda_of(&t))?.value;
    Ok(Sample::Err(rel(f, t.t00 * t.t00)))
}

pub fn jacobi_ext(rng: &mut SampleRng, _: usize, _: usize) -> Result<Sample> {
    let (g, _, tau) = word_and_point(rng, &half_generators()?, 8, tau_in_d2)?;
    let t = theta_all(tau)?;
    let lambda = lambda_of(&t);
    if on_cut(lambda) {
        return Ok(Sample::Skipped);
    }
    let f = hgf(&HParams::real(0.5, 0.5, 1.0)?, lambda)?.value;
    let rhs = f / (-g.g21.to_cx() * tau.value() + g.g11.to_cx());
    Ok(Sample::Err(rel(rhs, t.t00 * t.t00)))
}

pub fn quarter(rng: &mut SampleRng, _: usize, _: usize) -> Result<Sample> {
    let t = theta_all(tau_in_d12(rng)?)?;
    let f = hgf(&HParams::real(0.25, 0.25, 1.0)?, zeta_of(&t))?.value;
    Ok(Sample::Err(rel(f, t.t00 * t.t00)))
}

pub fn three_quarter(rng: &mut SampleRng, _: usize, _: usize) -> Result<Sample> {
    let tau = loop {
        let t = tau_in_d12(rng)?;
        if (t.value() - Cx::new(0.0, 1.0)).norm() >= 0.1 {
            break t;
        }
    };
    let t = theta_all(tau)?;
    let f = hgf(&HParams::real(0.75, 0.75, 1.0)?, zeta_of(&t))?.value;
    let rhs = t.t00.powu(6) / (t.t01.powu(4) - t.t10.powu(4));
    Ok(Sample::Err(rel(f, rhs)))
}

pub fn quarter_ext(rng: &mut SampleRng, _: usize, _: usize) -> Result<Sample> {
    let (g, _, tau) = word_and_point(rng, &quarter_generators()?, 8, tau_in_d12)?;
    let t = theta_all(tau)?;
    let zeta = zeta_of(&t);
    if on_cut(zeta) {
        return Ok(Sample::Skipped);
    }
    let f = hgf(&HParams::real(0.25, 0.25, 1.0)?, zeta)?.value;
    let det = g.det()?.to_cx();
    let rhs = det * f / (-g.g21.to_cx() * tau.value() + g.g11.to_cx());
    Ok(Sample::Err(rel(rhs, t.t00 * t.t00)))
}

pub fn twice(rng: &mut SampleRng, _: usize, _: usize) -> Result<Sample> {
    let tau = tau_strip(rng, 0.3, 10.0)?;
    let t = theta_all(tau)?;
    let d = theta_double(&t);
    let t2 = theta_all(Tau::new(2.0 * tau.value())?)?;
    let scale = d.s00.norm().max(d.s01.norm()).max(d.s10.norm());
    let err = [(d.s00, t2.t00), (d.s01, t2.t01), (d.s10, t2.t10)]
        .iter()
        .map(|&(s, th)| (s - th * th).norm() / scale)
        .fold(jacobi_gap(t.t00, t.t01, t.t10), f64::max);
    Ok(Sample::Err(err))
}

pub fn j_act(rng: &mut SampleRng, _: usize, _: usize) -> Result<Sample> {
    let tau = tau_strip(rng, 0.3, 5.0)?;
    let a = theta_all(tau)?;
    let b = theta_all(Tau::new(-1.0 / tau.value())?)?;
    let f = Cx::new(0.0, -1.0) * tau.value();
    let scale = (f * a.t00 * a.t00).norm();
    let err = [(b.t00, a.t00), (b.t01, a.t10), (b.t10, a.t01)]
        .iter()
        .map(|&(x, y)| (x * x - f * y * y).norm() / scale)
        .fold(0.0, f64::max);
    Ok(Sample::Err(err))
}

fn grid(index: usize, total: usize, lo: f64, hi: f64) -> f64 {
    if total <= 1 {
        return lo;
    }
    lo + (hi - lo) * index as f64 / (total - 1) as f64
}

pub fn transform_quarter_check(_: &mut SampleRng, index: usize, total: usize) -> Result<Sample> {
    let (lhs, rhs) = transform_quarter(grid(index, total, 0.1, 1.9))?;
    Ok(Sample::Err(rel(rhs, lhs)))
}

pub fn factor_g2(rng: &mut SampleRng, _: usize, _: usize) -> Result<Sample> {
    let g = word_sample_with(rng, &quarter_generators()?, 8)?;
    let tau = tau_strip(rng, 0.3, 5.0)?;
    let (lhs, rhs) = factor_check(&g, tau)?;
    Ok(Sample::Err((lhs - rhs).norm() / (1.0 + lhs.norm())))
}

pub fn monodromy_closure(rng: &mut SampleRng, _: usize, _: usize) -> Result<Sample> {
    let q = word_sample_with(rng, &quarter_generators()?, 16)?;
    let h = word_sample_with(rng, &half_generators()?, 16)?;
    let ok = in_gamma24_ij(&q) && in_gamma24(&h);
    Ok(Sample::Err(if ok { 0.0 } else { 1.0 }))
}

/// Sample 0 is `(3/4, 3/4, 1)`, which must be rejected; the others compare
/// continuation to `z = 1 - 1e-12` with the closed form for `c - a - b` in
/// `[0.75, 2.5]`.
pub fn gauss_kummer_check(rng: &mut SampleRng, index: usize, _: usize) -> Result<Sample> {
    if index == 0 {
        let divergent = HParams::real(0.75, 0.75, 1.0)?;
        let raised = matches!(gauss_kummer(&divergent), Err(Error::Domain(_)))
            && matches!(hgf(&divergent, one()), Err(Error::Domain(_)));
        return Ok(Sample::Err(if raised { 0.0 } else { f64::INFINITY }));
    }
    let a = uniform(rng, 0.05, 1.5);
    let b = uniform(rng, 0.05, 1.5);
    let c = a + b + uniform(rng, 0.75, 2.5);
    let p = HParams::real(a, b, c)?;
    let closed = gauss_kummer(&p)?;
    let at_one = hgf(&p, one())?.value;
    let near = hgf_continued(&p, Cx::new(1.0 - 1e-12, 0.0))?.value;
    Ok(Sample::Err(rel(near, closed).max(rel(at_one, closed))))
}

/// Absolute error of `f2 / B(b, c - b)` against `hgf` for `(1/4, 1/4, 1)`.
pub fn euler_oracle(_: &mut SampleRng, index: usize, _: usize) -> Result<Sample> {
    const POINTS: [f64; 5] = [-0.5, 0.0, 0.25, 0.5, 0.75];
    let p = HParams::real(0.25, 0.25, 1.0)?;
    let z = Cx::new(POINTS[index % POINTS.len()], 0.0);
    let f2 = euler_f2(&p, z, 1e-10)? / beta_real(0.25, 0.75)?;
    Ok(Sample::Err((f2 - hgf(&p, z)?.value).norm()))
}

/// Point `index` of a `k x k` grid inside the lens `|z| < 1`, `|z - 1| < 1`.
pub fn lens_point(index: usize, total: usize) -> Cx {
    let k = (total as f64).sqrt().ceil().max(1.0) as usize;
    let (i, j) = (index / k % k, index % k);
    let x = (i + 1) as f64 / (k + 1) as f64;
    let half_height = (1.0 - x.max(1.0 - x).powi(2)).sqrt();
    let y = 0.9 * half_height * (2.0 * (j + 1) as f64 / (k + 1) as f64 - 1.0);
    Cx::new(x, y)
}

pub fn schwarz_half_check(_: &mut SampleRng, index: usize, total: usize) -> Result<Sample> {
    let z = lens_point(index, total);
    let t = theta_all(schwarz_half(z)?)?;
    Ok(Sample::Err((lambda_of(&t) - z).norm()))
}

pub fn schwarz_quarter_check(_: &mut SampleRng, index: usize, total: usize) -> Result<Sample> {
    let z = lens_point(index, total);
    let tau = schwarz_quarter(z)?;
    let round_trip = (zeta_of(&theta_all(tau)?) - z).norm();
    let alt = schwarz_quarter_alt(z)?;
    Ok(Sample::Err(round_trip.max(rel(alt.value(), tau.value()))))
}

pub fn agm_hgf(rng: &mut SampleRng, _: usize, _: usize) -> Result<Sample> {
    let x = log_uniform(rng, 0.1, 10.0);
    let y = x * log_uniform(rng, 0.02, 50.0);
    let m = agm(x, y, 1e-15)?;
    let f = hgf(&HParams::real(0.5, 0.5, 1.0)?, Cx::new(1.0 - (y / x) * (y / x), 0.0))?.value;
    Ok(Sample::Err((m - x / f.re).abs() / m))
}

/// Relative gap between the iterated limit and its hypergeometric form;
/// a trace with `N > 2` counts as a failure.
pub fn mu_limit(rng: &mut SampleRng, _: usize, _: usize) -> Result<Sample> {
    let x = log_uniform(rng, 0.1, 10.0);
    let r = 20.0 - 21.0 * rng.random::<f64>();
    let trace = mu_iterate(x, r * x, ITERATE_TOL, ITERATE_CAP)?;
    if trace.n_index > 2 {
        return Ok(Sample::Err(f64::INFINITY));
    }
    let via = limit_via_hgf(&trace)?;
    Ok(Sample::Err((trace.limit - via).abs() / trace.limit))
}

pub fn theta_trace(rng: &mut SampleRng, _: usize, _: usize) -> Result<Sample> {
    let x = log_uniform(rng, 0.1, 10.0);
    let y = x * uniform(rng, 0.02, 0.98);
    Ok(Sample::Err(theta_trace_check(x, y)?.max_rel_err))
}

/// Largest violation, relative to `x`, of the mean inequalities on one pair
/// per domain. Strict inequalities that hold with equality count as `1`.
pub fn mean_properties(rng: &mut SampleRng, index: usize, _: usize) -> Result<Sample> {
    let mut v = Violations::default();
    let x = log_uniform(rng, 0.1, 10.0);

    // positive pairs, away from the diagonal so strictness is observable
    let y = x * pick_off_diagonal(rng, 0.05, 20.0);
    let (lo, hi) = (x.min(y), x.max(y));
    let (a, g, h) = (m_arith(x, y), m_geom(x, y)?, m_harm(x, y)?);
    for m in [a, g, h, mu0(x, y)?] {
        v.strict(lo, m, x);
        v.strict(m, hi, x);
    }
    v.le(g, a, x);
    v.le(h, g, x);

    // mu0 bounds for y < x
    let y = x * uniform(rng, 0.01, 0.99);
    let m = mu0(x, y)?;
    v.strict(x / SQRT_2, m, x);
    v.strict(m, x, x);
    let y = x * uniform(rng, -0.99, 0.99);
    let m = mu0(x, y)?;
    v.strict(0.0, x - m, x);
    v.strict(x - m, m - y, x);

    // nu on S(1/3, 3)
    let y = x * pick_off_diagonal(rng, 1.0 / 3.0 + 1e-3, 3.0 - 1e-3);
    debug_assert!(domain_contains(Domain::SThirdTo3, x, y));
    let n = nu(x, y)?;
    v.strict(x.min(y), n, x);
    v.strict(n, x.max(y), x);
    v.le_abs((n - nu(y, x)?).abs(), x);

    // mu1, mu2 on S(-1, inf)
    let y = x * pick_off_diagonal(rng, -0.99, 20.0);
    let (m1, m2) = (mu1(x, y)?, mu2(x, y)?);
    v.strict(m2, m1, x);
    v.strict(0.0, m1 + m2, x);
    // S(-1, 1]
    let y = x * uniform(rng, -0.99, 1.0);
    let (m1, m2) = (mu1(x, y)?, mu2(x, y)?);
    v.le(y, m2, x);
    v.le(x + y, m1 + m2, x);
    // mu2 as a mean on S(0, 17)
    let y = x * pick_off_diagonal(rng, 0.01, 16.99);
    let m2 = mu2(x, y)?;
    v.strict(x.min(y), m2, x);
    v.strict(m2, x.max(y), x);
    // equality on the diagonal
    v.le_abs((mu1(x, x)? - mu2(x, x)?).abs(), x);

    if index == 0 {
        // nu < 0 above y = (3 + 2 sqrt 2) x, and limits differ under y -> -y
        v.strict(nu(1.0, 6.0)?, 0.0, 1.0);
        let plus = mu_iterate(1.0, 0.5, ITERATE_TOL, ITERATE_CAP)?.limit;
        let minus = mu_iterate(1.0, -0.5, ITERATE_TOL, ITERATE_CAP)?.limit;
        v.strict(1e-6, (plus - minus).abs(), 1.0);
    }
    Ok(Sample::Err(v.worst))
}

fn pick_off_diagonal(rng: &mut SampleRng, lo: f64, hi: f64) -> f64 {
    loop {
        let r = uniform(rng, lo, hi);
        if (r - 1.0).abs() > 1e-3 {
            return r;
        }
    }
}

#[derive(Default)]
struct Violations {
    worst: f64,
}

impl Violations {
    /// `a <= b`
    fn le(&mut self, a: f64, b: f64, scale: f64) {
        self.worst = self.worst.max((a - b).max(0.0) / scale);
    }

    /// `a < b`
    fn strict(&mut self, a: f64, b: f64, scale: f64) {
        if a >= b {
            self.worst = self.worst.max(((a - b) / scale).max(1.0));
        }
    }

    fn le_abs(&mut self, gap: f64, scale: f64) {
        self.worst = self.worst.max(gap / scale);
    }
}
