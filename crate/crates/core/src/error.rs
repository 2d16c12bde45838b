//! Error signals shared by all numerical operations.

use core::fmt;

/// Failure modes of the numerical operations.
///
/// Every operation that can fail returns one of these instead of a NaN;
/// quadrature and series routines report `PrecisionExhausted` when the
/// requested tolerance cannot be certified within the configured budget.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Argument sits on a pole of the function.
    PoleAtArgument,
    /// Requested tolerance not reached within the term/step budget.
    PrecisionExhausted { achieved: f64, requested: f64 },
    /// Argument outside the convergence region of the chosen expansion.
    NotInConvergenceRegion,
    /// Parameter outside the vertical strip / order range the routine supports.
    OutOfDomain(&'static str),
    /// Result magnitude exceeds the floating-point range.
    Overflow,
    /// The stored coefficient data is too shallow for the request.
    InsufficientData { needed: u64, available: u64 },
    /// Spectral data too sparse to certify the requested truncation budget.
    InsufficientSpectralData { kappa_max: f64, needed: f64 },
    /// Degenerate parameter pair (for example a contour through a pole).
    Degenerate(&'static str),
    /// Malformed input data (snapshot validation and friends).
    Invalid(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::PoleAtArgument => write!(f, "argument is a pole"),
            Error::PrecisionExhausted { achieved, requested } => write!(
                f,
                "precision exhausted: achieved {achieved:.3e}, requested {requested:.3e}"
            ),
            Error::NotInConvergenceRegion => write!(f, "argument outside convergence region"),
            Error::OutOfDomain(what) => write!(f, "out of supported domain: {what}"),
            Error::Overflow => write!(f, "overflow"),
            Error::InsufficientData { needed, available } => write!(
                f,
                "insufficient coefficient data: need index {needed}, have {available}"
            ),
            Error::InsufficientSpectralData { kappa_max, needed } => write!(
                f,
                "spectral data ends at kappa={kappa_max}, truncation budget needs kappa~{needed}"
            ),
            Error::Degenerate(what) => write!(f, "degenerate parameters: {what}"),
            Error::Invalid(what) => write!(f, "invalid data: {what}"),
        }
    }
}

#[cfg(any(test, feature = "std"))]
impl std::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
