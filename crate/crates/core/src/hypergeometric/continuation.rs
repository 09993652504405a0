//! Analytic continuation by stepping along a path and re-expanding the
//! solution of `z(1-z)F'' + (c - (a+b+1)z)F' - abF = 0` in a Taylor series at
//! each node.
//!
//! Every step has length at most half the distance to the nearer singular
//! point `0` or `1`, so each local series converges at least like `2^-k`.
//! Paths never cross the real axis outside `[start, end]`, which makes the
//! result the single-valued branch: points with `Im z > 0`, and points on the
//! cut `(1, inf)`, are reached from the upper half-plane.

use super::series::hgf_series;
use super::{HParams, HValue, PathNote, HGF_TOL};
use crate::error::{Error, Result};
use crate::Cx;

const START_RADIUS: f64 = 0.5;
const STEP_FRACTION: f64 = 0.5;
const MAX_STEPS: usize = 10_000;
const MAX_TAYLOR_TERMS: usize = 4_000;

/// `F(a, b, c; z)` by continuation from a point of modulus `1/2`, whatever `z` is.
///
/// Independent of the connection and Pfaff paths used by [`super::hgf`], so
/// the two can be checked against each other. Points with `|z| <= 1/2` are
/// summed directly.
pub fn hgf_continued(p: &HParams, z: Cx) -> Result<HValue> {
    if z.norm() <= START_RADIUS {
        return hgf_series(p, z, HGF_TOL);
    }
    continue_from_origin(p, z)
}

pub(crate) fn continue_from_origin(p: &HParams, z: Cx) -> Result<HValue> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain("continuation needs a finite target".into()));
    }
    if (z - Cx::new(1.0, 0.0)).norm() == 0.0 {
        return Err(Error::Domain("z = 1 is a singular point".into()));
    }
    let start = start_point(z);
    let f = hgf_series(p, start, HGF_TOL)?;
    let shifted = HParams::new(p.a + 1.0, p.b + 1.0, p.c + 1.0)?;
    let df = hgf_series(&shifted, start, HGF_TOL)?;
    let mut value = f.value;
    let mut deriv = p.a * p.b / p.c * df.value;
    let mut terms = f.terms_used + df.terms_used;
    let mut here = start;
    for _ in 0..MAX_STEPS {
        let remaining = z - here;
        if remaining.norm() == 0.0 {
            return Ok(HValue { value, terms_used: terms, path_note: PathNote::Continuation });
        }
        let reach = STEP_FRACTION * here.norm().min((Cx::new(1.0, 0.0) - here).norm());
        let step = if remaining.norm() <= reach { remaining } else { remaining * (reach / remaining.norm()) };
        let (v, d, used) = taylor_step(p, here, value, deriv, step)?;
        value = v;
        deriv = d;
        terms += used;
        here = if step == remaining { z } else { here + step };
    }
    Err(Error::NonConvergence { terms })
}

/// Start of the path: on the real axis for real `z < 1`, otherwise on the
/// imaginary axis in the half-plane of `z` (upper for the cut `z > 1`).
fn start_point(z: Cx) -> Cx {
    if z.im == 0.0 && z.re < 1.0 {
        Cx::new(START_RADIUS.copysign(z.re), 0.0)
    } else if z.im < 0.0 {
        Cx::new(0.0, -START_RADIUS)
    } else {
        Cx::new(0.0, START_RADIUS)
    }
}

/// Advance `(F, F')` from `z0` to `z0 + h` with the local Taylor series.
/// Works with scaled coefficients `d_k = c_k h^k`.
fn taylor_step(p: &HParams, z0: Cx, f0: Cx, df0: Cx, h: Cx) -> Result<(Cx, Cx, usize)> {
    let ab = p.a * p.b;
    let a0 = z0 * (Cx::new(1.0, 0.0) - z0);
    let a1 = Cx::new(1.0, 0.0) - 2.0 * z0;
    let abp1 = p.a + p.b + 1.0;
    let b0 = p.c - abp1 * z0;
    let b1 = -abp1;
    let (mut d_prev, mut d_cur) = (f0, df0 * h);
    let mut value = d_prev + d_cur;
    let mut slope = d_cur;
    let mut small_run = 0;
    for k in 0..MAX_TAYLOR_TERMS {
        let kf = k as f64;
        let next = -((a1 * (kf * (kf + 1.0)) + b0 * (kf + 1.0)) * d_cur * h
            + (Cx::new(-kf * (kf - 1.0), 0.0) + b1 * kf - ab) * d_prev * h * h)
            / (a0 * ((kf + 1.0) * (kf + 2.0)));
        value += next;
        slope += next * (kf + 2.0);
        let scale = value.norm() + slope.norm();
        if next.norm() <= 1e-17 * scale {
            small_run += 1;
            if small_run == 3 {
                return Ok((value, slope / h, k + 3));
            }
        } else {
            small_run = 0;
        }
        d_prev = d_cur;
        d_cur = next;
    }
    Err(Error::NonConvergence { terms: MAX_TAYLOR_TERMS })
}
