//! Circuit matrices of the hypergeometric equation in the Euler-integral
//! basis, and their passage to exact Gaussian-integer matrices.

use std::f64::consts::PI;

use super::HParams;
use crate::error::{Error, Result};
use crate::modular::{mat_mul, GInt, GMat};
use crate::scalar::cis_turns;
use crate::Cx;

/// 2x2 complex matrix, row-major.
pub type CMat = [[Cx; 2]; 2];

/// `exp(2 pi i x)` for complex `x`.
fn turns(x: Cx) -> Cx {
    cis_turns(x.re) * (-2.0 * PI * x.im).exp()
}

/// `(M0, M1)` for loops around `0` and `1`:
/// `M0 = [[e(-c), e(-b) - 1], [0, 1]]`, `M1 = [[e(c-a-b), 0], [1 - e(-a), 1]]`,
/// with `e(x) = exp(2 pi i x)`.
pub fn circuit_matrices(p: &HParams) -> (CMat, CMat) {
    let one = Cx::new(1.0, 0.0);
    let zero = Cx::new(0.0, 0.0);
    let m0 = [[turns(-p.c), turns(-p.b) - one], [zero, one]];
    let m1 = [[turns(p.excess()), zero], [one - turns(-p.a), one]];
    (m0, m1)
}

/// Exact matrix whose entries lie within `tol` of those of `m`.
pub fn round_to_gmat(m: &CMat, tol: f64) -> Result<GMat> {
    let round = |z: Cx| -> Result<GInt> {
        let (re, im) = (z.re.round(), z.im.round());
        if (z.re - re).abs() > tol || (z.im - im).abs() > tol || re.abs() > 1e15 || im.abs() > 1e15 {
            return Err(Error::InvalidParameter(format!("entry {z} is not a Gaussian integer")));
        }
        Ok(GInt::new(re as i64, im as i64))
    };
    Ok(GMat::new(round(m[0][0])?, round(m[0][1])?, round(m[1][0])?, round(m[1][1])?))
}

/// Change of basis `P = [[-1+i, i], [0, 1]]` that turns the `(1/4, 1/4, 1)`
/// circuit matrices into elements of `Gamma(2,4)` and its `iJ` coset.
pub fn p_matrix() -> GMat {
    GMat::new(GInt::new(-1, 1), GInt::I, GInt::ZERO, GInt::ONE)
}

/// `P M P^-1`, computed as `P M adj(P) / det(P)` with exact division, since
/// `det P = -1 + i` is not a unit.
pub fn conjugate_by_p(m: &GMat) -> Result<GMat> {
    let p = p_matrix();
    let det = p.det()?;
    let prod = mat_mul(&mat_mul(&p, m)?, &p.adjugate()?)?;
    let div = |x: GInt| -> Result<GInt> {
        x.div_exact(det)?
            .ok_or_else(|| Error::InvalidParameter(format!("{m} is not conjugated into Z[i] by P")))
    };
    Ok(GMat::new(div(prod.g11)?, div(prod.g12)?, div(prod.g21)?, div(prod.g22)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular::{in_gamma24, in_gamma24_ij, mat_inv};

    fn exact(a: f64, b: f64, c: f64) -> (GMat, GMat) {
        let (m0, m1) = circuit_matrices(&HParams::real(a, b, c).unwrap());
        (round_to_gmat(&m0, 1e-12).unwrap(), round_to_gmat(&m1, 1e-12).unwrap())
    }

    #[test]
    fn half_half_one() {
        let (m0, m1) = exact(0.5, 0.5, 1.0);
        assert_eq!(m0, GMat::ints(1, -2, 0, 1));
        assert_eq!(m1, GMat::ints(1, 0, 2, 1));
        assert!(in_gamma24(&m0) && in_gamma24(&m1));
    }

    #[test]
    fn quarter_quarter_one() {
        let (m0, m1) = exact(0.25, 0.25, 1.0);
        assert_eq!(m0, GMat::new(GInt::ONE, GInt::new(-1, -1), GInt::ZERO, GInt::ONE));
        assert_eq!(m1, GMat::new(GInt::int(-1), GInt::ZERO, GInt::new(1, 1), GInt::ONE));
        let c1 = conjugate_by_p(&m1).unwrap();
        assert_eq!(c1, GMat::IJ);
        assert_eq!(mat_mul(&c1, &c1).unwrap(), GMat::IDENTITY);
        let c0 = conjugate_by_p(&m0).unwrap();
        assert_eq!(c0, GMat::ints(1, 2, 0, 1));
        assert!(in_gamma24_ij(&c0) && in_gamma24_ij(&c1));
        assert_eq!(conjugate_by_p(&mat_inv(&m0).unwrap()).unwrap(), mat_inv(&c0).unwrap());
    }

    #[test]
    fn trivial_parameters() {
        let (m0, m1) = exact(0.0, 0.0, 1.0);
        assert_eq!((m0, m1), (GMat::IDENTITY, GMat::IDENTITY));
    }

    #[test]
    fn non_integral_entries_rejected() {
        let (m0, _) = circuit_matrices(&HParams::real(0.1, 0.2, 1.3).unwrap());
        assert!(round_to_gmat(&m0, 1e-12).is_err());
    }
}
