//! Hypergeometric functions, theta constants and the `(mu1, mu2)` mean
//! iteration, with a catalog of numerically checked identities linking them.
//!
//! ```
//! use theta_means::{hypergeometric::{hgf, HParams}, theta::{theta_pq, Tau}, Cx};
//!
//! let tau = Tau::from_parts(0.0, 1.0).unwrap();
//! let t00 = theta_pq(0, 0, tau, 1e-16).unwrap();
//! let f = hgf(&HParams::real(0.5, 0.5, 1.0).unwrap(), Cx::new(0.5, 0.0)).unwrap();
//! assert!((t00 * t00 - f.value).norm() < 1e-13);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod hypergeometric;
pub mod means;
pub mod modular;
pub mod quad;
pub mod scalar;
pub mod theta;
pub mod verify;

pub use error::{Error, Result};

/// Complex scalar in double precision.
pub type Cx = num_complex::Complex64;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/scalar-kernel.md")]
    mod scalar_kernel {}
    #[doc = include_str!("../../../book/src/hypergeometric.md")]
    mod hypergeometric {}
    #[doc = include_str!("../../../book/src/theta.md")]
    mod theta {}
    #[doc = include_str!("../../../book/src/modular.md")]
    mod modular {}
    #[doc = include_str!("../../../book/src/means.md")]
    mod means {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
