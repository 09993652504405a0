//! Deterministic per-sample random streams and the sampling regions.

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Error, Result};
use crate::modular::{mobius_cx, word_sample_with, GMat};
use crate::theta::{in_d12, in_d2, Tau};

pub type SampleRng = Xoshiro256PlusPlus;

/// Smallest `Im` accepted for the image `g tau0` in the extended-formula checks.
pub const MIN_IMAGE_IM: f64 = 0.02;

const REJECTION_LIMIT: usize = 100_000;

fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Stream for sample `index` of check `id`: the result does not depend on
/// which thread evaluates the sample.
pub fn sample_rng(seed: u64, id: &str, index: usize) -> SampleRng {
    let mixed = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ fnv1a(id) ^ (index as u64).wrapping_mul(0xd1b5_4a32_d192_ed03);
    Xoshiro256PlusPlus::seed_from_u64(mixed)
}

/// Uniform on `[lo, hi)` from 53 random bits.
pub fn uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.random::<f64>()
}

pub fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    uniform(rng, lo.ln(), hi.ln()).exp()
}

/// `Re` in `(-1, 1]`, `Im` in `[im_lo, im_hi)`.
pub fn tau_strip<R: Rng>(rng: &mut R, im_lo: f64, im_hi: f64) -> Result<Tau> {
    let re = 1.0 - 2.0 * rng.random::<f64>();
    Tau::from_parts(re, uniform(rng, im_lo, im_hi))
}

fn rejection<R: Rng>(rng: &mut R, mut draw: impl FnMut(&mut R) -> Result<Option<Tau>>) -> Result<Tau> {
    for _ in 0..REJECTION_LIMIT {
        if let Some(t) = draw(rng)? {
            return Ok(t);
        }
    }
    Err(Error::InvariantViolation("sampling region rejected every draw".into()))
}

/// Point of `D(2)` with `Im` in `[0.3, 5)`.
pub fn tau_in_d2<R: Rng>(rng: &mut R) -> Result<Tau> {
    rejection(rng, |r| tau_strip(r, 0.3, 5.0).map(|t| in_d2(t).then_some(t)))
}

/// Point of `D12` with `Im` in `[0.3, 5)`.
pub fn tau_in_d12<R: Rng>(rng: &mut R) -> Result<Tau> {
    rejection(rng, |r| tau_strip(r, 0.3, 5.0).map(|t| in_d12(t).then_some(t)))
}

/// `(g, tau0, g tau0)` with `g` a word of length at most `max_len` in `gens`,
/// `tau0` drawn by `base`, redrawn until `Im(g tau0) >= MIN_IMAGE_IM`.
pub fn word_and_point<R: Rng>(
    rng: &mut R,
    gens: &[GMat],
    max_len: usize,
    base: fn(&mut R) -> Result<Tau>,
) -> Result<(GMat, Tau, Tau)> {
    for _ in 0..REJECTION_LIMIT {
        let g = word_sample_with(rng, gens, max_len)?;
        let t0 = base(rng)?;
        let image = mobius_cx(&g, t0.value())?;
        if image.im >= MIN_IMAGE_IM {
            return Ok((g, t0, Tau::new(image)?));
        }
    }
    Err(Error::InvariantViolation("no word kept its image away from the real axis".into()))
}
