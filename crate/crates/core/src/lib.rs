//! Numerical verification core for explicit spectral formulas for the
//! second and fourth moments of the Riemann zeta function on the
//! critical line, against smooth even weight functions.
//!
//! The crate is organised bottom-up:
//!
//! - [`specfun`]: complex gamma/polygamma, zeta, Bessel, Whittaker,
//!   Gauss hypergeometric and divisor-sum primitives;
//! - [`weights`]: the admissible weight families (closed-form Fourier
//!   transforms only) and admissibility checks;
//! - [`dirichlet`]: shifted divisor Dirichlet series, their integral
//!   counterparts and the splitting identities;
//! - [`forms`]: spectral data model (Maass and holomorphic cusp forms),
//!   Hecke series evaluation through the functional equation;
//! - [`kernels`]: the Bessel-type kernel attached to a spectral point,
//!   its Mellin transforms and the spectral-side integral transforms;
//! - [`kirillov`]: Kirillov-model weight vectors, Jacquet integrals,
//!   local functional equations and Parseval checks;
//! - [`moments`]: direct moment quadrature, the explicit mean-square
//!   formula and the spectral fourth-moment assembly.
//!
//! Everything is deterministic: no randomness, no environment-dependent
//! tolerances. All tolerance knobs travel through [`Precision`].

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;
#[cfg(any(test, feature = "std"))]
extern crate std;

pub mod dirichlet;
pub mod error;
pub mod forms;
pub mod kernels;
pub mod kirillov;
pub mod moments;
pub mod prec;
pub mod quad;
pub mod specfun;
pub mod weights;

pub use error::Error;
pub use prec::Precision;

/// Complex double used throughout.
pub type Complex = num_complex::Complex64;
