//! Exact 2x2 matrices over the Gaussian integers, the congruence subgroups
//! that govern theta constants and monodromy, and the Moebius action.
//!
//! Entries are `i64` pairs with checked arithmetic; membership tests never
//! involve a tolerance.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Error, Result};
use crate::theta::Tau;
use crate::Cx;

/// Longest word accepted by [`word_sample`].
pub const MAX_WORD_LEN: usize = 16;

/// Gaussian integer `re + im i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GInt {
    pub re: i64,
    pub im: i64,
}

impl GInt {
    pub const ZERO: GInt = GInt { re: 0, im: 0 };
    pub const ONE: GInt = GInt { re: 1, im: 0 };
    pub const I: GInt = GInt { re: 0, im: 1 };
    pub const UNITS: [GInt; 4] =
        [GInt { re: 1, im: 0 }, GInt { re: -1, im: 0 }, GInt { re: 0, im: 1 }, GInt { re: 0, im: -1 }];

    pub const fn new(re: i64, im: i64) -> Self {
        Self { re, im }
    }

    pub const fn int(re: i64) -> Self {
        Self { re, im: 0 }
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => GInt::ONE,
            1 => GInt::I,
            2 => GInt::int(-1),
            _ => GInt::new(0, -1),
        }
    }

    pub fn checked_add(self, o: GInt) -> Result<GInt> {
        Ok(GInt::new(
            self.re.checked_add(o.re).ok_or(Error::Overflow)?,
            self.im.checked_add(o.im).ok_or(Error::Overflow)?,
        ))
    }

    pub fn checked_sub(self, o: GInt) -> Result<GInt> {
        Ok(GInt::new(
            self.re.checked_sub(o.re).ok_or(Error::Overflow)?,
            self.im.checked_sub(o.im).ok_or(Error::Overflow)?,
        ))
    }

    pub fn checked_mul(self, o: GInt) -> Result<GInt> {
        let m = |x: i64, y: i64| x.checked_mul(y).ok_or(Error::Overflow);
        let re = m(self.re, o.re)?.checked_sub(m(self.im, o.im)?).ok_or(Error::Overflow)?;
        let im = m(self.re, o.im)?.checked_add(m(self.im, o.re)?).ok_or(Error::Overflow)?;
        Ok(GInt::new(re, im))
    }

    pub fn checked_neg(self) -> Result<GInt> {
        GInt::ZERO.checked_sub(self)
    }

    pub fn conj(self) -> GInt {
        GInt::new(self.re, -self.im)
    }

    pub fn norm_sqr(self) -> Result<i64> {
        let m = |x: i64| x.checked_mul(x).ok_or(Error::Overflow);
        m(self.re)?.checked_add(m(self.im)?).ok_or(Error::Overflow)
    }

    pub fn is_unit(self) -> bool {
        GInt::UNITS.contains(&self)
    }

    pub fn is_real(self) -> bool {
        self.im == 0
    }

    /// `self / d` when the quotient is a Gaussian integer, `None` otherwise.
    pub fn div_exact(self, d: GInt) -> Result<Option<GInt>> {
        let n = d.norm_sqr()?;
        if n == 0 {
            return Ok(None);
        }
        let num = self.checked_mul(d.conj())?;
        if num.re % n != 0 || num.im % n != 0 {
            return Ok(None);
        }
        Ok(Some(GInt::new(num.re / n, num.im / n)))
    }

    pub fn to_cx(self) -> Cx {
        Cx::new(self.re as f64, self.im as f64)
    }
}

impl fmt::Display for GInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, im) => write!(f, "{im}i"),
            (re, im) if im < 0 => write!(f, "{re}{im}i"),
            (re, im) => write!(f, "{re}+{im}i"),
        }
    }
}

/// 2x2 matrix `[[g11, g12], [g21, g22]]` over `Z[i]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GMat {
    pub g11: GInt,
    pub g12: GInt,
    pub g21: GInt,
    pub g22: GInt,
}

impl GMat {
    pub const IDENTITY: GMat = GMat { g11: GInt::ONE, g12: GInt::ZERO, g21: GInt::ZERO, g22: GInt::ONE };
    /// `iJ = [[0, i], [-i, 0]]`.
    pub const IJ: GMat = GMat { g11: GInt::ZERO, g12: GInt::I, g21: GInt::new(0, -1), g22: GInt::ZERO };

    pub const fn new(g11: GInt, g12: GInt, g21: GInt, g22: GInt) -> Self {
        Self { g11, g12, g21, g22 }
    }

    /// Matrix with rational-integer entries.
    pub const fn ints(g11: i64, g12: i64, g21: i64, g22: i64) -> Self {
        Self::new(GInt::int(g11), GInt::int(g12), GInt::int(g21), GInt::int(g22))
    }

    pub fn entries(&self) -> [GInt; 4] {
        [self.g11, self.g12, self.g21, self.g22]
    }

    pub fn det(&self) -> Result<GInt> {
        self.g11.checked_mul(self.g22)?.checked_sub(self.g12.checked_mul(self.g21)?)
    }

    pub fn is_real(&self) -> bool {
        self.entries().iter().all(|e| e.is_real())
    }

    pub fn scale(&self, u: GInt) -> Result<GMat> {
        Ok(GMat::new(self.g11.checked_mul(u)?, self.g12.checked_mul(u)?, self.g21.checked_mul(u)?, self.g22.checked_mul(u)?))
    }

    /// Adjugate `[[g22, -g12], [-g21, g11]]`.
    pub fn adjugate(&self) -> Result<GMat> {
        Ok(GMat::new(self.g22, self.g12.checked_neg()?, self.g21.checked_neg()?, self.g11))
    }

    pub fn to_cx(&self) -> [[Cx; 2]; 2] {
        [[self.g11.to_cx(), self.g12.to_cx()], [self.g21.to_cx(), self.g22.to_cx()]]
    }
}

impl fmt::Display for GMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.g11, self.g12, self.g21, self.g22)
    }
}

pub fn mat_mul(a: &GMat, b: &GMat) -> Result<GMat> {
    let dot = |x: GInt, y: GInt, z: GInt, w: GInt| x.checked_mul(y)?.checked_add(z.checked_mul(w)?);
    Ok(GMat::new(
        dot(a.g11, b.g11, a.g12, b.g21)?,
        dot(a.g11, b.g12, a.g12, b.g22)?,
        dot(a.g21, b.g11, a.g22, b.g21)?,
        dot(a.g21, b.g12, a.g22, b.g22)?,
    ))
}

/// Inverse of a matrix whose determinant is a unit: adjugate times `conj(det)`.
pub fn mat_inv(a: &GMat) -> Result<GMat> {
    let d = a.det()?;
    if !d.is_unit() {
        return Err(Error::NonUnitDeterminant(d.to_string()));
    }
    a.adjugate()?.scale(d.conj())
}

fn is_odd(x: GInt) -> bool {
    x.re.rem_euclid(2) == 1
}

fn is_even(x: GInt) -> bool {
    x.re.rem_euclid(2) == 0
}

fn real_special(g: &GMat) -> bool {
    g.is_real() && g.det().map(|d| d == GInt::ONE).unwrap_or(false)
}

/// `g` in `SL2(Z)` with `g = I mod 2`.
pub fn in_gamma2(g: &GMat) -> bool {
    real_special(g) && is_odd(g.g11) && is_odd(g.g22) && is_even(g.g12) && is_even(g.g21)
}

/// `g` in `Gamma(2)` with `g11 = g22 = 1 mod 4`.
pub fn in_gamma24(g: &GMat) -> bool {
    in_gamma2(g) && g.g11.re.rem_euclid(4) == 1 && g.g22.re.rem_euclid(4) == 1
}

/// `g` in `SL2(Z)` with `g11 g12` and `g21 g22` even.
pub fn in_gamma12(g: &GMat) -> bool {
    real_special(g)
        && (g.g11.re.rem_euclid(2) == 0 || g.g12.re.rem_euclid(2) == 0)
        && (g.g21.re.rem_euclid(2) == 0 || g.g22.re.rem_euclid(2) == 0)
}

/// `g` in `Gamma(2,4)` or in the coset `iJ Gamma(2,4)`. Since `(iJ)^2 = I`,
/// the coset test is `iJ g` in `Gamma(2,4)`.
pub fn in_gamma24_ij(g: &GMat) -> bool {
    if in_gamma24(g) {
        return true;
    }
    mat_mul(&GMat::IJ, g).map(|h| in_gamma24(&h)).unwrap_or(false)
}

/// The representative `u g` (`u` a unit) with real entries, determinant 1,
/// in `Gamma_{1,2}`, and `g21 > 0` or `g21 = 0, g22 > 0`.
pub fn normalize_pgamma12(g: &GMat) -> Result<GMat> {
    for u in GInt::UNITS {
        let h = g.scale(u)?;
        let positive = h.g21.re > 0 || (h.g21.re == 0 && h.g22.re > 0);
        if in_gamma12(&h) && positive {
            return Ok(h);
        }
    }
    Err(Error::InvalidParameter(format!("{g} has no unit multiple in the theta group")))
}

/// Character of the `theta_00^2` transformation law on a normalized matrix.
pub fn chi(g: &GMat) -> Result<GInt> {
    let (c, d) = (g.g21.re, g.g22.re);
    match (c.rem_euclid(2), d.rem_euclid(2)) {
        (0, 1) => Ok(GInt::i_pow(d - 1)),
        (1, 0) => Ok(GInt::i_pow(-c)),
        _ => Err(Error::Parity(format!("g21 = {c}, g22 = {d} must have opposite parity"))),
    }
}

/// `(g11 tau + g12) / (g21 tau + g22)` as a complex number.
pub fn mobius_cx(g: &GMat, tau: Cx) -> Result<Cx> {
    let [a, b, c, d] = g.entries().map(GInt::to_cx);
    let den = c * tau + d;
    if den.norm() < 1e-14 {
        return Err(Error::Pole);
    }
    Ok((a * tau + b) / den)
}

/// Moebius action on the upper half-plane.
pub fn mobius(g: &GMat, tau: Tau) -> Result<Tau> {
    let det = g.det()?;
    if !det.is_unit() {
        return Err(Error::NonUnitDeterminant(det.to_string()));
    }
    Tau::new(mobius_cx(g, tau.value())?)
}

/// Both sides of `g21 tau + g22 = chi(g') (g'21 tau + g'22)` with `g'` the
/// normalization of `g`.
pub fn factor_check(g: &GMat, tau: Tau) -> Result<(Cx, Cx)> {
    let t = tau.value();
    let lhs = g.g21.to_cx() * t + g.g22.to_cx();
    let n = normalize_pgamma12(g)?;
    let rhs = chi(&n)?.to_cx() * (n.g21.to_cx() * t + n.g22.to_cx());
    Ok((lhs, rhs))
}

/// Product of a word whose letters are 1-based generator indices, negative
/// for inverses: `[1, -2]` is `gens[0] * gens[1]^-1`.
pub fn word_product(gens: &[GMat], word: &[i32]) -> Result<GMat> {
    let mut acc = GMat::IDENTITY;
    for &letter in word {
        let idx = letter.unsigned_abs() as usize;
        if letter == 0 || idx > gens.len() {
            return Err(Error::Domain(format!("letter {letter} out of range for {} generators", gens.len())));
        }
        let g = if letter > 0 { gens[idx - 1] } else { mat_inv(&gens[idx - 1])? };
        acc = mat_mul(&acc, &g)?;
    }
    Ok(acc)
}

/// Random word of length uniform in `0..=max_len` over `gens` and their inverses.
pub fn random_word<R: Rng>(rng: &mut R, n_gens: usize, max_len: usize) -> Vec<i32> {
    let len = rng.random_range(0..=max_len);
    (0..len)
        .map(|_| {
            let k = rng.random_range(0..2 * n_gens) as i32;
            if k < n_gens as i32 { k + 1 } else { -(k - n_gens as i32 + 1) }
        })
        .collect()
}

/// Product of a seeded random word (Xoshiro256++ seeded from `seed`).
pub fn word_sample(gens: &[GMat], max_len: usize, seed: u64) -> Result<GMat> {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    word_sample_with(&mut rng, gens, max_len)
}

pub fn word_sample_with<R: Rng>(rng: &mut R, gens: &[GMat], max_len: usize) -> Result<GMat> {
    if gens.is_empty() {
        return Err(Error::Domain("word_sample needs at least one generator".into()));
    }
    if max_len > MAX_WORD_LEN {
        return Err(Error::Domain(format!("max_len {max_len} exceeds {MAX_WORD_LEN}")));
    }
    word_product(gens, &random_word(rng, gens.len(), max_len))
}
