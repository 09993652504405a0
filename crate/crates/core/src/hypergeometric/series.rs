use super::{HParams, HValue, PathNote};
use crate::error::{Error, Result};
use crate::Cx;

/// Term cap for [`hgf_series`].
pub const DEFAULT_TERM_CAP: usize = 200_000;

/// Partial sum of the Gauss series `sum (a)_n (b)_n / ((c)_n n!) z^n` on `|z| < 1`.
///
/// Terms follow `t_{n+1} = t_n (a+n)(b+n) z / ((c+n)(n+1))`. Summation stops
/// once `|t_n| <= tol |S_n|` holds for three consecutive terms, so a single
/// small term of an alternating tail does not end the sum early.
pub fn hgf_series(p: &HParams, z: Cx, tol: f64) -> Result<HValue> {
    hgf_series_capped(p, z, tol, DEFAULT_TERM_CAP)
}

pub(crate) fn hgf_series_capped(p: &HParams, z: Cx, tol: f64, cap: usize) -> Result<HValue> {
    if !(1e-16..=1e-6).contains(&tol) {
        return Err(Error::Domain(format!("series tolerance {tol:e} outside [1e-16, 1e-6]")));
    }
    if !(z.re.is_finite() && z.im.is_finite()) || z.norm() >= 1.0 {
        return Err(Error::Domain(format!("hgf_series needs |z| < 1, got {z}")));
    }
    let (a, b, c) = (p.a, p.b, p.c);
    let mut term = Cx::new(1.0, 0.0);
    let mut sum = term;
    let mut small_run = 0;
    for n in 0..cap {
        let nf = n as f64;
        term = term * (a + nf) * (b + nf) * z / ((c + nf) * (nf + 1.0));
        sum += term;
        if term.norm() <= tol * sum.norm() {
            small_run += 1;
            if small_run == 3 {
                return Ok(HValue { value: sum, terms_used: n + 2, path_note: PathNote::DirectSeries });
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::NonConvergence { terms: cap })
}
