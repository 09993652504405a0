//! Euler-integral oracle and quadratic transformation identities.

use super::{hgf, HParams};
use crate::error::{Error, Result};
use crate::quad::integrate;
use crate::scalar::{cpow_complex, BranchSpec};
use crate::Cx;

/// `int_0^1 t^{b-1} (1-t)^{c-b-1} (1-tz)^{-a} dt = B(b, c-b) F(a, b, c; z)` by
/// adaptive quadrature, for real `z` in `(-1, 1)`.
///
/// The interval is split at `1/2`. Near `0` the substitution `t = u^{1/s}`
/// with `s = min(Re b, 1)` turns `t^{b-1} dt` into the bounded `u^{b/s - 1} du / s`;
/// near `1` the same is done with `1 - t` and `Re(c - b)`.
pub fn euler_f2(p: &HParams, z: Cx, quad_tol: f64) -> Result<Cx> {
    let (a, b, c) = (p.a, p.b, p.c);
    if !(b.re > 0.0 && (c - b).re > 0.0 && (1.0 - a).re > 0.0) {
        return Err(Error::Domain("euler_f2 needs Re b > 0, Re(c - b) > 0, Re(1 - a) > 0".into()));
    }
    if z.im != 0.0 || !(z.re > -1.0 && z.re < 1.0) {
        return Err(Error::Domain(format!("euler_f2 needs real z in (-1, 1), got {z}")));
    }
    if !(quad_tol > 0.0) {
        return Err(Error::Domain("quad_tol must be positive".into()));
    }
    let x = z.re;
    let one = Cx::new(1.0, 0.0);
    let pw = |base: f64, e: Cx| cpow_complex(Cx::new(base, 0.0), e, BranchSpec::PRINCIPAL).unwrap_or_default();
    let tail = |t: f64, s: f64| pw(1.0 - t * x, -a) / s;

    let s0 = b.re.min(1.0);
    let near_zero = |u: f64| {
        let t = u.powf(1.0 / s0);
        pw(u, b / s0 - one) * pw(1.0 - t, c - b - one) * tail(t, s0)
    };
    let s1 = (c - b).re.min(1.0);
    let near_one = |v: f64| {
        let one_minus_t = v.powf(1.0 / s1);
        let t = 1.0 - one_minus_t;
        pw(t, b - one) * pw(v, (c - b) / s1 - one) * tail(t, s1)
    };
    let left = integrate(near_zero, 0.0, 0.5f64.powf(s0), quad_tol / 2.0)?;
    let right = integrate(near_one, 0.0, 0.5f64.powf(s1), quad_tol / 2.0)?;
    Ok(left + right)
}

/// Which classical quadratic transformation to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadTransform {
    /// `F(a, b, 2b; 4z/(1+z)^2) = (1+z)^{2a} F(a, a-b+1/2, b+1/2; z^2)`.
    Fe1,
    /// `F(a, b, (a+b+1)/2; z) = F(a/2, b/2, (a+b+1)/2; 4z(1-z))`.
    Fe2,
    /// `F(a, b, (a+b+1)/2; z) = (1-2z) F((a+1)/2, (b+1)/2, (a+b+1)/2; 4z(1-z))`.
    Fe3,
}

/// Both sides of the chosen quadratic transformation at `z`, `|z| < 0.3`.
pub fn quad_transform_check(which: QuadTransform, a: Cx, b: Cx, z: Cx) -> Result<(Cx, Cx)> {
    if !(z.norm() < 0.3) {
        return Err(Error::Domain(format!("quadratic transforms are checked on |z| < 0.3, got {z}")));
    }
    let one = Cx::new(1.0, 0.0);
    let half = Cx::new(0.5, 0.0);
    match which {
        QuadTransform::Fe1 => {
            let lhs = hgf(&HParams::new(a, b, 2.0 * b)?, 4.0 * z / ((one + z) * (one + z)))?.value;
            let pre = cpow_complex(one + z, 2.0 * a, BranchSpec::PRINCIPAL)?;
            let rhs = pre * hgf(&HParams::new(a, a - b + half, b + half)?, z * z)?.value;
            Ok((lhs, rhs))
        }
        QuadTransform::Fe2 | QuadTransform::Fe3 => {
            let c = (a + b + one) / 2.0;
            let lhs = hgf(&HParams::new(a, b, c)?, z)?.value;
            let w = 4.0 * z * (one - z);
            let rhs = if which == QuadTransform::Fe2 {
                hgf(&HParams::new(a / 2.0, b / 2.0, c)?, w)?.value
            } else {
                (one - 2.0 * z) * hgf(&HParams::new((a + one) / 2.0, (b + one) / 2.0, c)?, w)?.value
            };
            Ok((lhs, rhs))
        }
    }
}

/// Both sides of
/// `(2 + sqrt(2+2w))/4 F(1/4,1/4,1; 1-w^2) = F(1/4,1/4,1; 1 - ((6r - w - 3)/(2r + w + 3))^2)`
/// with `r = sqrt(2w + 2)`.
///
/// Both sides are defined on `w > -1`. They agree on `(0, w*)` where
/// `w* ~ 66.9` is the point at which `6r - w - 3` changes sign; the default
/// working window is `(0.05, 1.95)`.
pub fn transform_quarter(w: f64) -> Result<(Cx, Cx)> {
    if !(w > -1.0 && w.is_finite()) {
        return Err(Error::Domain(format!("transform_quarter needs w in (-1, inf), got {w}")));
    }
    let p = HParams::real(0.25, 0.25, 1.0)?;
    let r = (2.0 * w + 2.0).sqrt();
    let lhs = (2.0 + r) / 4.0 * hgf(&p, Cx::new(1.0 - w * w, 0.0))?.value;
    let ratio = (6.0 * r - w - 3.0) / (2.0 * r + w + 3.0);
    let rhs = hgf(&p, Cx::new(1.0 - ratio * ratio, 0.0))?.value;
    Ok((lhs, rhs))
}
