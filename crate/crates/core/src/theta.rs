//! Theta constants `theta_pq(tau)`, the modular functions `lambda` and
//! `zeta`, fundamental domains, and the inverse Schwarz maps.
//!
//! `theta_pq(tau) = sum_n exp(pi i (n + p/2)^2 tau + pi i (n + p/2) q)`.
//! The sum is taken ring by ring: `n` with `-n` for `p = 0`, `n` with
//! `-n - 1` for `p = 1`, so both members of a ring share the same power of
//! `q = exp(pi i tau)` and differ only in the sign `(-1)^{nq}`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::hypergeometric::{hgf, HParams};
use crate::modular::{mat_mul, GMat};
use crate::scalar::{beta_real, cpow, BranchSpec};
use crate::Cx;

/// Smallest `Im tau` accepted by the theta series.
pub const MIN_IM_TAU: f64 = 1e-3;
/// Ring cap for [`theta_pq`].
pub const MAX_RINGS: usize = 10_000;
/// Tolerance used by [`theta_all`].
pub const THETA_TOL: f64 = 1e-16;

const ARC_TOL: f64 = 1e-12;
const MAX_REDUCTIONS: usize = 10_000;

/// A point of the upper half-plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tau(Cx);

impl Tau {
    pub fn new(value: Cx) -> Result<Self> {
        if !(value.re.is_finite() && value.im.is_finite()) || value.im <= 0.0 {
            return Err(Error::Domain(format!("tau = {value} is not in the upper half-plane")));
        }
        Ok(Self(value))
    }

    /// `re + im i`.
    pub fn from_parts(re: f64, im: f64) -> Result<Self> {
        Self::new(Cx::new(re, im))
    }

    pub fn value(self) -> Cx {
        self.0
    }
}

/// `(theta_00, theta_01, theta_10)` at one point; satisfies
/// `t00^4 = t01^4 + t10^4` to relative `1e-12`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaTriple {
    pub t00: Cx,
    pub t01: Cx,
    pub t10: Cx,
}

impl ThetaTriple {
    pub fn new(t00: Cx, t01: Cx, t10: Cx) -> Result<Self> {
        if t00.norm() == 0.0 {
            return Err(Error::InvariantViolation("theta_00 vanished".into()));
        }
        let gap = jacobi_gap(t00, t01, t10);
        if !(gap <= 1e-12) {
            return Err(Error::InvariantViolation(format!("Jacobi identity off by {gap:e}")));
        }
        Ok(Self { t00, t01, t10 })
    }
}

/// `|t00^4 - t01^4 - t10^4|` relative to the largest fourth power.
pub fn jacobi_gap(t00: Cx, t01: Cx, t10: Cx) -> f64 {
    let [a, b, c] = [t00, t01, t10].map(|t| t.powu(4));
    let scale = a.norm().max(b.norm()).max(c.norm());
    (a - b - c).norm() / scale
}

/// Squares `(theta_00(2 tau)^2, theta_01(2 tau)^2, theta_10(2 tau)^2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThetaSquares {
    pub s00: Cx,
    pub s01: Cx,
    pub s10: Cx,
}

/// `theta_pq(tau)` for `p, q` in `{0, 1}`, summed until a ring has modulus at
/// most `tol * max(1, |S|)`.
pub fn theta_pq(p: u8, q: u8, tau: Tau, tol: f64) -> Result<Cx> {
    if p > 1 || q > 1 {
        return Err(Error::Domain(format!("characteristics must be 0 or 1, got ({p}, {q})")));
    }
    if !(tol >= 1e-16) {
        return Err(Error::Domain(format!("theta tolerance {tol:e} below 1e-16")));
    }
    let t = tau.value();
    if t.im < MIN_IM_TAU {
        return Err(Error::Domain(format!("Im tau = {} below {MIN_IM_TAU}", t.im)));
    }
    let nome = (Cx::new(0.0, PI) * t).exp();
    let nome2 = nome * nome;
    // p = 0: q^{n^2}, next factor q^{2n+1}.  p = 1: q^{n(n+1)}, next factor q^{2n+2}.
    let mut power = Cx::new(1.0, 0.0);
    let mut step = if p == 0 { nome } else { nome2 };
    let mut sum = if p == 0 { power } else { power * pair_phase(p, q, 0) };
    for n in 1..=MAX_RINGS {
        power *= step;
        step *= nome2;
        let ring = power * pair_phase(p, q, n);
        let magnitude = 2.0 * power.norm();
        sum += ring;
        if magnitude <= tol * sum.norm().max(1.0) {
            return Ok(finish(p, q, t, sum));
        }
    }
    Err(Error::NonConvergence { terms: MAX_RINGS })
}

/// Sum of phases of the two members of ring `n`.
fn pair_phase(p: u8, q: u8, n: usize) -> f64 {
    let sign = if q == 1 && n % 2 == 1 { -1.0 } else { 1.0 };
    match p {
        0 => 2.0 * sign,
        // members n and -n-1 carry (-1)^{nq} and (-1)^{(n+1)q}
        _ if q == 1 => 0.0,
        _ => 2.0,
    }
}

fn finish(p: u8, q: u8, t: Cx, sum: Cx) -> Cx {
    if p == 0 {
        return sum;
    }
    if q == 1 {
        return Cx::new(0.0, 0.0);
    }
    // exp(pi i tau / 4) from (n + 1/2)^2 = n(n+1) + 1/4
    (Cx::new(0.0, PI / 4.0) * t).exp() * sum
}

/// The three non-trivial theta constants at tolerance `1e-16`.
pub fn theta_all(tau: Tau) -> Result<ThetaTriple> {
    ThetaTriple::new(theta_pq(0, 0, tau, THETA_TOL)?, theta_pq(0, 1, tau, THETA_TOL)?, theta_pq(1, 0, tau, THETA_TOL)?)
}

/// `lambda = theta_10^4 / theta_00^4`.
pub fn lambda_map(tau: Tau) -> Result<Cx> {
    let t = theta_all(tau)?;
    Ok(lambda_of(&t))
}

pub fn lambda_of(t: &ThetaTriple) -> Cx {
    (t.t10 / t.t00).powu(4)
}

/// `zeta = 4 theta_01^4 theta_10^4 / theta_00^8`.
pub fn zeta_map(tau: Tau) -> Result<Cx> {
    let t = theta_all(tau)?;
    Ok(zeta_of(&t))
}

/// Near `zeta = 1` the equivalent `1 - w^2`, `w = (theta_01^4 - theta_10^4) / theta_00^4`,
/// is used; it is exact at the fixed point `tau = i`.
pub fn zeta_of(t: &ThetaTriple) -> Cx {
    let (a, b) = ((t.t01 / t.t00).powu(4), (t.t10 / t.t00).powu(4));
    let w = a - b;
    if w.norm_sqr() < 0.5 {
        1.0 - w * w
    } else {
        4.0 * a * b
    }
}

/// Squares of the theta constants at `2 tau` from those at `tau`.
pub fn theta_double(t: &ThetaTriple) -> ThetaSquares {
    let (a, b) = (t.t00 * t.t00, t.t01 * t.t01);
    ThetaSquares { s00: (a + b) / 2.0, s01: t.t00 * t.t01, s10: (a - b) / 2.0 }
}

/// Fundamental region of `Gamma(2)`:
/// `-1 < Re <= 1`, `|tau - 1/2| >= 1/2`, `|tau + 1/2| > 1/2`.
pub fn in_d2(tau: Tau) -> bool {
    let t = tau.value();
    t.re > -1.0 && t.re <= 1.0 && (t - 0.5).norm() >= 0.5 && (t + 0.5).norm() > 0.5
}

/// Fundamental region of `Gamma_{1,2}`: `-1 < Re <= 1` and `|tau| > 1`, or
/// `|tau| = 1` (to `1e-12`) and `0 <= Re <= 1`.
pub fn in_d12(tau: Tau) -> bool {
    let t = tau.value();
    let r2 = t.norm_sqr();
    if (r2 - 1.0).abs() <= 2.0 * ARC_TOL {
        return t.re >= 0.0 && t.re <= 1.0;
    }
    t.re > -1.0 && t.re <= 1.0 && r2 > 1.0
}

/// `(tau0, g)` with `tau = g tau0`, `tau0` in `D12`, `g` in `Gamma_{1,2}`.
pub fn reduce_to_d12(tau: Tau) -> Result<(Tau, GMat)> {
    let s_inv = GMat::ints(0, 1, -1, 0);
    let mut cur = tau.value();
    let mut g = GMat::IDENTITY;
    for _ in 0..MAX_REDUCTIONS {
        if in_d12(Tau::new(cur)?) {
            return Ok((Tau::new(cur)?, g));
        }
        let k = ((cur.re - 1.0) / 2.0).ceil();
        if k != 0.0 {
            cur.re -= 2.0 * k;
            g = mat_mul(&g, &GMat::ints(1, 2 * k as i64, 0, 1))?;
        }
        if in_d12(Tau::new(cur)?) {
            return Ok((Tau::new(cur)?, g));
        }
        if cur.norm_sqr() <= 1.0 + 2.0 * ARC_TOL {
            cur = -1.0 / cur;
            g = mat_mul(&g, &s_inv)?;
        }
    }
    Err(Error::IterationCap(MAX_REDUCTIONS))
}

fn check_lens(z: Cx) -> Result<()> {
    if z.norm() < 1.0 && (z - 1.0).norm() < 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("z = {z} is outside the lens |z| < 1, |z - 1| < 1")))
    }
}

/// `tau = i F(1/2, 1/2, 1; 1 - z) / F(1/2, 1/2, 1; z)`, inverse of `lambda` on the lens.
pub fn schwarz_half(z: Cx) -> Result<Tau> {
    check_lens(z)?;
    let p = HParams::real(0.5, 0.5, 1.0)?;
    let num = hgf(&p, Cx::new(1.0, 0.0) - z)?.value;
    let den = hgf(&p, z)?.value;
    Tau::new(Cx::new(0.0, 1.0) * num / den)
}

/// `tau = i (pi F(1/4,1/4,1; z) + B(3/4,3/4) sqrt(1-z) F(3/4,3/4,3/2; 1-z)) / (pi F(1/4,1/4,1; z))`,
/// inverse of `zeta` on the lens. `z = 1` gives `i`.
pub fn schwarz_quarter(z: Cx) -> Result<Tau> {
    let i = Cx::new(0.0, 1.0);
    if z == Cx::new(1.0, 0.0) {
        return Tau::new(i);
    }
    check_lens(z)?;
    let base = PI * hgf(&HParams::real(0.25, 0.25, 1.0)?, z)?.value;
    let w = Cx::new(1.0, 0.0) - z;
    let root = cpow(w, 0.5, BranchSpec::PRINCIPAL)?;
    let second = beta_real(0.75, 0.75)? * root * hgf(&HParams::real(0.75, 0.75, 1.5)?, w)?.value;
    Tau::new(i * (base + second) / base)
}

/// The same map as [`schwarz_quarter`] written with `B(1/4, 1/4)`:
/// `tau = i (-pi F(1/4,1/4,1; z) + B(1/4,1/4) F(1/4,1/4,1/2; 1-z)) / (pi F(1/4,1/4,1; z))`.
pub fn schwarz_quarter_alt(z: Cx) -> Result<Tau> {
    check_lens(z)?;
    let base = PI * hgf(&HParams::real(0.25, 0.25, 1.0)?, z)?.value;
    let w = Cx::new(1.0, 0.0) - z;
    let second = beta_real(0.25, 0.25)? * hgf(&HParams::real(0.25, 0.25, 0.5)?, w)?.value;
    Tau::new(Cx::new(0.0, 1.0) * (second - base) / base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::mobius_cx;
    use crate::scalar::gamma_real;
    use proptest::prelude::*;

    fn tau(re: f64, im: f64) -> Tau {
        Tau::from_parts(re, im).unwrap()
    }

    /// Plain symmetric sum over `|n| <= 60` straight from the definition.
    fn theta_oracle(p: u8, q: u8, t: Cx) -> Cx {
        let mut s = Cx::new(0.0, 0.0);
        for n in -60i32..=60 {
            let m = n as f64 + p as f64 / 2.0;
            let e = Cx::new(0.0, PI) * (m * m * t + m * q as f64);
            s += e.exp();
        }
        s
    }

    #[test]
    fn matches_definition() {
        for t in [tau(0.0, 1.0), tau(0.3, 1.7), tau(-0.8, 0.4), tau(0.5, 0.1)] {
            for (p, q) in [(0, 0), (0, 1), (1, 0)] {
                let a = theta_pq(p, q, t, 1e-16).unwrap();
                let b = theta_oracle(p, q, t.value());
                assert!((a - b).norm() < 1e-13 * b.norm().max(1.0), "({p},{q}) at {:?}", t);
            }
        }
    }

    #[test]
    fn theta_11_vanishes() {
        for t in [tau(0.0, 1.0), tau(0.7, 0.2)] {
            assert_eq!(theta_pq(1, 1, t, 1e-16).unwrap(), Cx::new(0.0, 0.0));
        }
    }

    #[test]
    fn value_at_i() {
        let closed = PI.powf(0.25) / gamma_real(0.75).unwrap();
        let v = theta_pq(0, 0, tau(0.0, 1.0), 1e-16).unwrap();
        assert!((v.re - closed).abs() < 1e-14 && v.im == 0.0);
        assert!((v.re - 1.086_434_811_213_308).abs() < 1e-14);
        let t = theta_all(tau(0.0, 1.0)).unwrap();
        assert!((t.t01 - t.t10).norm() < 1e-15);
    }

    #[test]
    fn input_checks() {
        assert!(Tau::from_parts(0.0, 0.0).is_err());
        assert!(theta_pq(2, 0, tau(0.0, 1.0), 1e-16).is_err());
        assert!(theta_pq(0, 0, tau(0.0, 1e-4), 1e-16).is_err());
        assert!(theta_pq(0, 0, tau(0.0, 1.0), 1e-17).is_err());
        assert!(ThetaTriple::new(Cx::new(1.0, 0.0), Cx::new(1.0, 0.0), Cx::new(1.0, 0.0)).is_err());
    }

    #[test]
    fn lambda_and_zeta_at_special_points() {
        assert!((lambda_map(tau(0.0, 1.0)).unwrap() - 0.5).norm() < 1e-15);
        assert!((lambda_map(tau(2.0, 1.0)).unwrap() - 0.5).norm() < 1e-14);
        assert!((zeta_map(tau(0.0, 1.0)).unwrap() - 1.0).norm() < 1e-15);
        let small = lambda_map(tau(0.0, 5.0)).unwrap();
        let q = (-5.0 * PI).exp();
        let leading = 16.0 * q * (1.0 - 8.0 * q);
        assert!((small.re - leading).abs() < 1e-6 * leading && small.im == 0.0);
        let l2 = lambda_map(tau(0.0, 2.0)).unwrap();
        assert!((zeta_map(tau(0.0, 2.0)).unwrap() - 4.0 * l2 * (1.0 - l2)).norm() < 1e-15);
        let (a, b) = (zeta_map(tau(1.0, 1.0)).unwrap(), zeta_map(tau(-1.0, 1.0)).unwrap());
        assert!((a - b).norm() < 1e-13);
    }

    #[test]
    fn doubling() {
        let t = theta_all(tau(0.0, 1.0)).unwrap();
        let d = theta_double(&t);
        let at2 = theta_all(tau(0.0, 2.0)).unwrap();
        assert!((d.s10 - at2.t10 * at2.t10).norm() < 1e-15 && d.s10.re > 0.0);
        assert!((at2.t01 * at2.t01 - t.t00 * t.t01).norm() < 1e-15);
        let degenerate = ThetaTriple { t00: Cx::new(1.3, 0.0), t01: Cx::new(1.3, 0.0), t10: Cx::new(0.0, 0.0) };
        assert_eq!(theta_double(&degenerate).s10, Cx::new(0.0, 0.0));
        let d = theta_double(&theta_all(tau(0.0, 1.3)).unwrap());
        let at = theta_all(tau(0.0, 2.6)).unwrap();
        for (x, y) in [(d.s00, at.t00), (d.s01, at.t01), (d.s10, at.t10)] {
            assert!((x - y * y).norm() < 1e-12 * x.norm());
        }
    }

    #[test]
    fn fundamental_domains() {
        assert!(in_d2(tau(0.0, 2.0)) && in_d12(tau(0.0, 2.0)));
        assert!(!in_d12(tau(0.5, 0.1)));
        let rho = Tau::new(Cx::from_polar(1.0, PI / 3.0)).unwrap();
        assert!(in_d12(rho));
        let rho_bar = Tau::new(Cx::from_polar(1.0, 2.0 * PI / 3.0)).unwrap();
        assert!(!in_d12(rho_bar));
        assert!(in_d12(tau(1.0, 0.5)) && !in_d12(tau(-1.0, 0.5)));
        assert!(in_d2(tau(1.0, 0.1)) && !in_d2(tau(-1.0, 0.1)));
        assert!(in_d2(tau(1.0, 0.0001)));
        assert!(!in_d2(tau(0.5, 0.3)));
        assert!(in_d2(Tau::new(Cx::new(0.5, 0.5)).unwrap()));
        assert!(!in_d2(Tau::new(Cx::new(-0.5, 0.5)).unwrap()));
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduce_to_d12(tau(0.0, 2.0)).unwrap(), (tau(0.0, 2.0), GMat::IDENTITY));
        let (t0, g) = reduce_to_d12(tau(2.0, 2.0)).unwrap();
        assert_eq!(g, GMat::ints(1, 2, 0, 1));
        assert!((t0.value() - Cx::new(0.0, 2.0)).norm() < 1e-15);
        let start = tau(0.1, 0.1);
        let (t0, g) = reduce_to_d12(start).unwrap();
        assert!(in_d12(t0));
        assert!(crate::modular::in_gamma12(&g));
        assert!((mobius_cx(&g, t0.value()).unwrap() - start.value()).norm() < 1e-12);
        assert!((zeta_map(start).unwrap() - zeta_map(t0).unwrap()).norm() < 1e-10);
    }

    #[test]
    fn schwarz_maps() {
        let t = schwarz_half(Cx::new(0.5, 0.0)).unwrap();
        assert!((t.value() - Cx::new(0.0, 1.0)).norm() < 1e-15);
        for z in [Cx::new(0.2, 0.0), Cx::new(0.8, 0.0), Cx::new(0.5, 0.6)] {
            let t = schwarz_half(z).unwrap();
            assert!((lambda_map(t).unwrap() - z).norm() < 1e-12);
        }
        assert_eq!(schwarz_quarter(Cx::new(1.0, 0.0)).unwrap().value(), Cx::new(0.0, 1.0));
        let t = schwarz_quarter(Cx::new(0.5, 0.0)).unwrap();
        assert!((zeta_map(t).unwrap() - 0.5).norm() < 1e-12);
        let alt = schwarz_quarter_alt(Cx::new(0.5, 0.0)).unwrap();
        assert!((alt.value() - t.value()).norm() < 1e-12);
        assert!(schwarz_half(Cx::new(1.5, 0.0)).is_err());
    }

    #[test]
    fn boundary_lambda_is_negative_real() {
        for k in 0..9 {
            let im = 1.0 + 0.5 * k as f64;
            for re in [1.0, -1.0] {
                let l = lambda_map(tau(re, im)).unwrap();
                assert!(l.re < 0.0 && l.im.abs() <= 1e-10, "{l}");
            }
        }
    }

    proptest! {
        #[test]
        fn jacobi_identity(re in -1.0f64..1.0, im in 0.3f64..10.0) {
            let t = theta_all(tau(re, im)).unwrap();
            prop_assert!(jacobi_gap(t.t00, t.t01, t.t10) <= 1e-12);
        }

        #[test]
        fn zeta_lambda_relation(re in -1.0f64..1.0, im in 0.3f64..5.0) {
            let t = theta_all(tau(re, im)).unwrap();
            let l = lambda_of(&t);
            prop_assert!((zeta_of(&t) - 4.0 * l * (1.0 - l)).norm() <= 1e-12 * (1.0 + zeta_of(&t).norm()));
        }

        #[test]
        fn involution_law(re in -1.0f64..1.0, im in 0.3f64..5.0) {
            let t = tau(re, im);
            let s = Tau::new(-1.0 / t.value()).unwrap();
            let (a, b) = (theta_all(t).unwrap(), theta_all(s).unwrap());
            let f = Cx::new(0.0, -1.0) * t.value();
            for (x, y) in [(b.t00, a.t00), (b.t01, a.t10), (b.t10, a.t01)] {
                let scale = (f * a.t00 * a.t00).norm();
                prop_assert!((x * x - f * y * y).norm() <= 1e-11 * scale);
            }
        }

        #[test]
        fn period_two(re in -1.0f64..1.0, im in 0.3f64..5.0) {
            // theta_10(tau + 1) = exp(pi i / 4) theta_10(tau), so its square flips sign.
            let (a, b) = (theta_all(tau(re, im)).unwrap(), theta_all(tau(re + 2.0, im)).unwrap());
            let scale = [a.t00, a.t01, a.t10].iter().map(|t| t.norm_sqr()).fold(0.0, f64::max);
            for (x, y) in [(a.t00, b.t00), (a.t01, b.t01)] {
                prop_assert!((x * x - y * y).norm() <= 1e-12 * scale);
            }
            prop_assert!((a.t10 * a.t10 + b.t10 * b.t10).norm() <= 1e-12 * scale);
            prop_assert!((a.t10.powu(4) - b.t10.powu(4)).norm() <= 1e-12 * scale * scale);
        }

        #[test]
        fn reduction_round_trip(re in -3.0f64..3.0, im in 0.02f64..3.0) {
            let t = tau(re, im);
            let (t0, g) = reduce_to_d12(t).unwrap();
            prop_assert!(in_d12(t0));
            prop_assert!(crate::modular::in_gamma12(&g));
            prop_assert!((mobius_cx(&g, t0.value()).unwrap() - t.value()).norm() <= 1e-12 * (1.0 + t.value().norm()));
        }
    }
}
