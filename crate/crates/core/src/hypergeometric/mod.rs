//! The Gauss hypergeometric function `F(a, b, c; z)` as a single-valued
//! function on `C - {1}`, read from `Im z > 0` along the cut `(1, inf)`.
//!
//! [`hgf`] picks one evaluation path per point:
//!
//! | region | path |
//! |---|---|
//! | `z = 1` | Gauss-Kummer closed form |
//! | `\|z\| <= 0.75` | direct series |
//! | `Re z > 0.75`, `\|1 - z\| < 0.9`, real parameters, `c - a - b` not an integer | two-term connection formula in `1 - z` |
//! | `Re z <= 0`, `\|z / (z - 1)\| <= 0.9` | Pfaff map then direct series |
//! | anything else | Taylor re-expansion of the differential equation along a path |
//!
//! The last row covers the logarithmic cases `c - a - b` in `Z`, such as
//! `(1/2, 1/2, 1)`, and points far from both `0` and `1`.

mod continuation;
mod monodromy;
mod series;
mod transforms;

pub use continuation::hgf_continued;
pub use monodromy::{circuit_matrices, conjugate_by_p, p_matrix, round_to_gmat, CMat};
pub use series::{hgf_series, DEFAULT_TERM_CAP};
pub use transforms::{euler_f2, quad_transform_check, transform_quarter, QuadTransform};

use crate::error::{Error, Result};
use crate::scalar::{cpow_complex, gamma_signed, is_gamma_pole, rgamma, BranchSpec};
use crate::Cx;

/// Tolerance used by [`hgf`] for every series it sums.
pub const HGF_TOL: f64 = 1e-16;

const DIRECT_RADIUS: f64 = 0.75;
const TRANSFORMED_RADIUS: f64 = 0.9;

/// Parameter triple `(a, b, c)` with `c` away from the poles `0, -1, -2, ...`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HParams {
    pub a: Cx,
    pub b: Cx,
    pub c: Cx,
}

impl HParams {
    pub fn new(a: Cx, b: Cx, c: Cx) -> Result<Self> {
        let finite = [a, b, c].iter().all(|v| v.re.is_finite() && v.im.is_finite());
        if !finite {
            return Err(Error::InvalidParameter("parameters must be finite".into()));
        }
        if c.im.abs() <= 1e-12 && is_gamma_pole(c.re) {
            return Err(Error::InvalidParameter(format!("c = {c} is a non-positive integer")));
        }
        Ok(Self { a, b, c })
    }

    pub fn real(a: f64, b: f64, c: f64) -> Result<Self> {
        Self::new(Cx::new(a, 0.0), Cx::new(b, 0.0), Cx::new(c, 0.0))
    }

    pub fn is_real(&self) -> bool {
        self.a.im == 0.0 && self.b.im == 0.0 && self.c.im == 0.0
    }

    /// `c - a - b`, the exponent of the second local solution at `z = 1`.
    pub fn excess(&self) -> Cx {
        self.c - self.a - self.b
    }
}

/// How a value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PathNote {
    DirectSeries,
    Connection1mz,
    Pfaff,
    ClosedFormLimit,
    Continuation,
}

impl std::fmt::Display for PathNote {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            PathNote::DirectSeries => "direct-series",
            PathNote::Connection1mz => "connection-1mz",
            PathNote::Pfaff => "pfaff",
            PathNote::ClosedFormLimit => "closed-form-limit",
            PathNote::Continuation => "continuation",
        };
        f.write_str(s)
    }
}

/// A value of `F` with the number of series terms spent on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HValue {
    pub value: Cx,
    pub terms_used: usize,
    pub path_note: PathNote,
}

/// `F(a, b, c; z)` anywhere in `C - {1}`, plus `z = 1` when `Re(c - a - b) > 0`.
pub fn hgf(p: &HParams, z: Cx) -> Result<HValue> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::Domain("hgf needs a finite argument".into()));
    }
    let one = Cx::new(1.0, 0.0);
    if z == one {
        let value = gauss_kummer(p)?;
        return Ok(HValue { value, terms_used: 0, path_note: PathNote::ClosedFormLimit });
    }
    if z.norm() <= DIRECT_RADIUS {
        return hgf_series(p, z, HGF_TOL);
    }
    if z.re > DIRECT_RADIUS && (one - z).norm() < TRANSFORMED_RADIUS && connection_applies(p) {
        return connection(p, z);
    }
    if z.re <= 0.0 && (z / (z - one)).norm() <= TRANSFORMED_RADIUS {
        return pfaff(p, z);
    }
    continuation::continue_from_origin(p, z)
}

fn connection_applies(p: &HParams) -> bool {
    let s = p.excess().re;
    p.is_real() && (s - s.round()).abs() > 1e-9
}

/// Two-term connection formula around `z = 1`:
/// `F = A F(a, b, a+b-c+1; 1-z) + B (1-z)^{c-a-b} F(c-a, c-b, c-a-b+1; 1-z)`.
fn connection(p: &HParams, z: Cx) -> Result<HValue> {
    let (a, b, c) = (p.a.re, p.b.re, p.c.re);
    let s = c - a - b;
    let gc = gamma_signed(c)?;
    let coef_a = gc * gamma_signed(s)? * rgamma(c - a)? * rgamma(c - b)?;
    let coef_b = gc * gamma_signed(-s)? * rgamma(a)? * rgamma(b)?;
    let w = Cx::new(1.0, 0.0) - z;
    let first = hgf_series(&HParams::real(a, b, 1.0 - s)?, w, HGF_TOL)?;
    let second = hgf_series(&HParams::real(c - a, c - b, 1.0 + s)?, w, HGF_TOL)?;
    // On the cut z > 1 we read F from above, where arg(1 - z) = -pi.
    let power = cpow_complex(w, Cx::new(s, 0.0), BranchSpec::FROM_BELOW)?;
    Ok(HValue {
        value: first.value * coef_a + power * second.value * coef_b,
        terms_used: first.terms_used + second.terms_used,
        path_note: PathNote::Connection1mz,
    })
}

/// Pfaff: `F(a, b, c; z) = (1 - z)^{-a} F(a, c - b, c; z / (z - 1))`.
fn pfaff(p: &HParams, z: Cx) -> Result<HValue> {
    let one = Cx::new(1.0, 0.0);
    let mapped = HParams::new(p.a, p.c - p.b, p.c)?;
    let inner = hgf_series(&mapped, z / (z - one), HGF_TOL)?;
    let prefactor = cpow_complex(one - z, -p.a, BranchSpec::PRINCIPAL)?;
    Ok(HValue { value: prefactor * inner.value, terms_used: inner.terms_used, path_note: PathNote::Pfaff })
}

/// `F(a, b, c; 1) = Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b))` for real
/// parameters with `c - a - b > 0`.
pub fn gauss_kummer(p: &HParams) -> Result<Cx> {
    if p.excess().re <= 0.0 {
        return Err(Error::Domain(format!(
            "F(a, b, c; 1) diverges: Re(c - a - b) = {} <= 0",
            p.excess().re
        )));
    }
    if !p.is_real() {
        return Err(Error::InvalidParameter("Gauss-Kummer is implemented for real parameters".into()));
    }
    let (a, b, c) = (p.a.re, p.b.re, p.c.re);
    let value = gamma_signed(c)? * gamma_signed(c - a - b)? * rgamma(c - a)? * rgamma(c - b)?;
    Ok(Cx::new(value, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rel(x: Cx, y: Cx) -> f64 {
        (x - y).norm() / y.norm()
    }

    fn quarter() -> HParams {
        HParams::real(0.25, 0.25, 1.0).unwrap()
    }

    fn agm_oracle(mut x: f64, mut y: f64) -> f64 {
        for _ in 0..40 {
            let (nx, ny) = ((x + y) / 2.0, (x * y).sqrt());
            x = nx;
            y = ny;
        }
        x
    }

    #[test]
    fn rejects_poles_of_c() {
        assert!(matches!(HParams::real(0.5, 0.5, 0.0), Err(Error::InvalidParameter(_))));
        assert!(matches!(HParams::real(0.5, 0.5, -3.0), Err(Error::InvalidParameter(_))));
        assert!(HParams::real(0.5, 0.5, -2.5).is_ok());
    }

    #[test]
    fn gauss_kummer_values() {
        let gk = gauss_kummer(&quarter()).unwrap();
        assert!((gk.re - 1.180_340_599_016_096_2).abs() < 1e-13);
        let trivial = gauss_kummer(&HParams::real(0.7, 0.0, 1.9).unwrap()).unwrap();
        assert!((trivial.re - 1.0).abs() < 1e-14);
        let three = HParams::real(0.75, 0.75, 1.0).unwrap();
        assert!(matches!(gauss_kummer(&three), Err(Error::Domain(_))));
    }

    #[test]
    fn hgf_at_one_uses_closed_form() {
        let v = hgf(&quarter(), Cx::new(1.0, 0.0)).unwrap();
        assert_eq!(v.path_note, PathNote::ClosedFormLimit);
        assert_eq!(v.value, gauss_kummer(&quarter()).unwrap());
        assert!(hgf(&HParams::real(0.75, 0.75, 1.0).unwrap(), Cx::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn agm_point_via_pfaff() {
        // F(1/2, 1/2, 1; 1 - y^2/x^2) = x / agm(x, y) at (x, y) = (1, 2).
        let expected = 1.0 / agm_oracle(1.0, 2.0);
        let v = hgf(&HParams::real(0.5, 0.5, 1.0).unwrap(), Cx::new(-3.0, 0.0)).unwrap();
        assert_eq!(v.path_note, PathNote::Pfaff);
        assert!((v.value.re - expected).abs() < 1e-14);
        assert!((expected - 0.686_440_250_309_175_1).abs() < 1e-14);
    }

    #[test]
    fn path_selection() {
        let p = quarter();
        assert_eq!(hgf(&p, Cx::new(0.5, 0.2)).unwrap().path_note, PathNote::DirectSeries);
        assert_eq!(hgf(&p, Cx::new(0.9, 0.1)).unwrap().path_note, PathNote::Connection1mz);
        assert_eq!(hgf(&p, Cx::new(1.5, 0.0)).unwrap().path_note, PathNote::Connection1mz);
        assert_eq!(hgf(&p, Cx::new(-2.0, 0.5)).unwrap().path_note, PathNote::Pfaff);
        assert_eq!(hgf(&p, Cx::new(3.0, 2.0)).unwrap().path_note, PathNote::Continuation);
        let log_case = HParams::real(0.5, 0.5, 1.0).unwrap();
        assert_eq!(hgf(&log_case, Cx::new(0.9, 0.0)).unwrap().path_note, PathNote::Continuation);
    }

    #[test]
    fn connection_agrees_with_series_on_overlap() {
        for params in [quarter(), HParams::real(0.75, 0.75, 1.0).unwrap()] {
            for k in 0..8 {
                let z = Cx::new(0.6 + 0.018 * k as f64, 0.0);
                let direct = hgf_series(&params, z, 1e-16).unwrap();
                let conn = connection(&params, z).unwrap();
                assert!(rel(conn.value, direct.value) < 1e-9, "z = {z}");
            }
        }
    }

    #[test]
    fn upper_side_of_cut() {
        // Approach z = 1.5 from above; continuation along an upper path is the
        // independent oracle.
        let p = quarter();
        let on_cut = hgf(&p, Cx::new(1.5, 0.0)).unwrap().value;
        let above = hgf(&p, Cx::new(1.5, 1e-9)).unwrap().value;
        let below = hgf(&p, Cx::new(1.5, -1e-9)).unwrap().value;
        let continued = hgf_continued(&p, Cx::new(1.5, 0.0)).unwrap().value;
        assert!((on_cut - above).norm() < 1e-7);
        assert!((on_cut - continued).norm() < 1e-12);
        assert!((on_cut - below).norm() > 1e-2);
        assert!(on_cut.im.abs() > 1e-3);
        assert!((on_cut - below.conj()).norm() < 1e-7);
    }

    #[test]
    fn log_case_near_one() {
        // F(1/2, 1/2, 1; 1 - e) ~ (1/pi) ln(16 / e) as e -> 0.
        let p = HParams::real(0.5, 0.5, 1.0).unwrap();
        let z = 1.0 - 1e-10;
        let e = 1.0 - z;
        let v = hgf(&p, Cx::new(z, 0.0)).unwrap().value.re;
        let approx = (16.0 / e).ln() / std::f64::consts::PI;
        assert!((v - approx).abs() < 1e-8);
    }

    proptest! {
        #[test]
        fn dispatch_matches_series_inside_disc(r in 0.0f64..0.6, t in 0.0f64..std::f64::consts::TAU) {
            let z = Cx::from_polar(r, t);
            let p = quarter();
            let a = hgf(&p, z).unwrap().value;
            let b = hgf_series(&p, z, 1e-16).unwrap().value;
            prop_assert!(rel(a, b) <= 1e-12);
        }

        #[test]
        fn pfaff_matches_series(x in -0.99f64..-0.75) {
            let z = Cx::new(x, 0.0);
            for p in [quarter(), HParams::real(0.5, 0.5, 1.0).unwrap(), HParams::real(0.3, -1.2, 2.1).unwrap()] {
                let direct = hgf_series(&p, z, 1e-16).unwrap().value;
                let via = pfaff(&p, z).unwrap().value;
                prop_assert!(rel(via, direct) <= 1e-11);
            }
        }

        #[test]
        fn pfaff_matches_continuation(x in -5.0f64..-0.75) {
            let z = Cx::new(x, 0.0);
            let p = quarter();
            let via = hgf(&p, z).unwrap().value;
            let cont = hgf_continued(&p, z).unwrap().value;
            prop_assert!(rel(via, cont) <= 1e-11);
        }

        #[test]
        fn paths_agree_off_axis(re in -3.0f64..3.0, im in 0.05f64..2.0) {
            let z = Cx::new(re, im);
            let p = quarter();
            let a = hgf(&p, z).unwrap().value;
            let b = hgf_continued(&p, z).unwrap().value;
            prop_assert!(rel(a, b) <= 1e-10, "{} vs {}", a, b);
        }
    }
}
