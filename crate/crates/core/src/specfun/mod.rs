//! Scalar special functions used by every higher layer.
//!
//! All routines are pure and deterministic; complex-valued ones use the
//! principal branch unless stated otherwise.

mod bessel;
mod divisor;
mod gamma;
mod hyp2f1;
mod whittaker;
mod zeta;

pub use bessel::{
    bessel_i, bessel_j, bessel_j_complex, bessel_j_int, bessel_k, bessel_k_scaled_imag,
};
pub use divisor::{divisor_count, divisor_sigma, divisor_sigma_c, factorize};
pub use gamma::{gamma, log_gamma, polygamma};
pub use hyp2f1::hyp2f1;
pub use whittaker::whittaker_w;
pub use zeta::zeta;

/// Bernoulli numbers B_2, B_4, ..., B_30.
pub(crate) const BERNOULLI_2K: [f64; 15] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
    -23749461029.0 / 870.0,
    8615841276005.0 / 14322.0,
];
