//! Precision policy threaded through every numerical operation.

/// Requested accuracy and budget for a numerical operation.
///
/// `abs_tol`/`rel_tol` are targets, not guarantees; routines that cannot
/// certify them return [`crate::Error::PrecisionExhausted`] rather than a
/// silently degraded value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Precision {
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Budget for series terms / quadrature panel subdivisions.
    pub max_terms: u32,
    /// Extra decimal digits carried by internal expansions beyond the target.
    pub working_guard_digits: u32,
}

impl Default for Precision {
    fn default() -> Self {
        Precision {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_terms: 40_000,
            working_guard_digits: 3,
        }
    }
}

impl Precision {
    pub fn with_tols(abs_tol: f64, rel_tol: f64) -> Self {
        Precision {
            abs_tol,
            rel_tol,
            ..Precision::default()
        }
    }

    /// Mixed absolute/relative acceptance test against a reference scale.
    pub fn accepts(&self, err: f64, scale: f64) -> bool {
        err <= self.abs_tol || err <= self.rel_tol * scale.abs()
    }

    /// Tolerance tightened by the guard digits, for inner stages.
    pub fn guarded(&self) -> Self {
        let shrink = libm::pow(10.0, -(self.working_guard_digits as f64));
        Precision {
            abs_tol: self.abs_tol * shrink,
            rel_tol: self.rel_tol * shrink,
            ..*self
        }
    }
}
