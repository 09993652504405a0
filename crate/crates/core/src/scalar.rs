//! Real Gamma and Beta functions and branch-aware complex powers.
//!
//! `gamma_real` uses the Lanczos approximation with `g = 7` and nine
//! coefficients (Godfrey's table). On `x >= 1/2` it is evaluated directly;
//! on `(0, 1/2)` the recurrence `Gamma(x) = Gamma(x + 1) / x` shifts the
//! argument into range, so no reflection is needed for positive arguments.
//! Relative error stays below `1e-14` on the interval `(0, 50]`.
//!
//! Complex powers use the argument range `(-pi, pi]`. A point on the
//! negative real axis is read as the limit from one side of the cut, chosen
//! by [`BoundarySide`].

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::Cx;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEF: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Gamma function on the positive reals.
pub fn gamma_real(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("gamma_real needs a finite x > 0, got {x}")));
    }
    if x == x.round() && x <= 20.0 {
        return Ok((1..x as u64).product::<u64>() as f64);
    }
    if x < 0.5 {
        return Ok(lanczos(x + 1.0) / x);
    }
    Ok(lanczos(x))
}

fn lanczos(x: f64) -> f64 {
    let x = x - 1.0;
    let mut acc = LANCZOS_COEF[0];
    for (i, &c) in LANCZOS_COEF.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
}

/// Beta function `Gamma(a) Gamma(b) / Gamma(a + b)` for positive arguments.
pub fn beta_real(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::Domain(format!("beta_real needs a, b > 0, got ({a}, {b})")));
    }
    // Symmetric in (a, b) by construction: the product commutes exactly.
    Ok(gamma_real(a)? * gamma_real(b)? / gamma_real(a + b)?)
}

/// `x` is a non-positive integer to within `1e-12`.
pub(crate) fn is_gamma_pole(x: f64) -> bool {
    x <= 0.0 && (x - x.round()).abs() <= 1e-12
}

/// Gamma on the whole real line away from its poles, by upward recurrence.
pub(crate) fn gamma_signed(x: f64) -> Result<f64> {
    if is_gamma_pole(x) {
        return Err(Error::Domain(format!("Gamma has a pole at {x}")));
    }
    if x > 0.0 {
        return gamma_real(x);
    }
    let mut shifted = x;
    let mut denom = 1.0;
    while shifted <= 0.0 {
        denom *= shifted;
        shifted += 1.0;
    }
    Ok(gamma_real(shifted)? / denom)
}

/// `1 / Gamma(x)`, which is zero at the poles.
pub(crate) fn rgamma(x: f64) -> Result<f64> {
    if is_gamma_pole(x) {
        return Ok(0.0);
    }
    Ok(1.0 / gamma_signed(x)?)
}

/// Which side of the cut along the negative real axis a point is read from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BoundarySide {
    /// Limit from `Im > 0`: `arg = pi`.
    #[default]
    FromAbove,
    /// Limit from `Im < 0`: `arg = -pi`.
    FromBelow,
}

/// Branch of `arg` used by [`cpow`]. The range is always `(-pi, pi]`; only the
/// reading of points on the negative real axis is configurable.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct BranchSpec {
    pub boundary_side: BoundarySide,
}

impl BranchSpec {
    pub const PRINCIPAL: BranchSpec = BranchSpec { boundary_side: BoundarySide::FromAbove };
    pub const FROM_BELOW: BranchSpec = BranchSpec { boundary_side: BoundarySide::FromBelow };

    /// Argument of `z` in `(-pi, pi]`, with negative reals mapped to `+-pi`.
    pub fn arg(&self, z: Cx) -> f64 {
        if z.im == 0.0 && z.re < 0.0 {
            return match self.boundary_side {
                BoundarySide::FromAbove => PI,
                BoundarySide::FromBelow => -PI,
            };
        }
        z.im.atan2(z.re)
    }
}

/// `z^s` for real `s` on the branch `branch`.
pub fn cpow(z: Cx, s: f64, branch: BranchSpec) -> Result<Cx> {
    cpow_complex(z, Cx::new(s, 0.0), branch)
}

/// `z^s` for complex `s`, `exp(s * log z)` with `log` on `branch`.
pub fn cpow_complex(z: Cx, s: Cx, branch: BranchSpec) -> Result<Cx> {
    if !(z.re.is_finite() && z.im.is_finite() && s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::Domain("cpow needs finite arguments".into()));
    }
    if z == Cx::new(0.0, 0.0) {
        if s.re > 0.0 {
            return Ok(Cx::new(0.0, 0.0));
        }
        return Err(Error::Domain("0^s needs Re(s) > 0".into()));
    }
    if s == Cx::new(0.0, 0.0) {
        return Ok(Cx::new(1.0, 0.0));
    }
    if s == Cx::new(1.0, 0.0) {
        return Ok(z);
    }
    let log = Cx::new(z.norm().ln(), branch.arg(z));
    Ok((s * log).exp())
}

/// `exp(2 pi i x)`, exact at quarter turns.
pub fn cis_turns(x: f64) -> Cx {
    let frac = x - x.floor();
    let quarters = frac * 4.0;
    if quarters == quarters.round() {
        return match quarters as i64 % 4 {
            0 => Cx::new(1.0, 0.0),
            1 => Cx::new(0.0, 1.0),
            2 => Cx::new(-1.0, 0.0),
            _ => Cx::new(0.0, -1.0),
        };
    }
    let angle = 2.0 * PI * frac;
    Cx::new(angle.cos(), angle.sin())
}
