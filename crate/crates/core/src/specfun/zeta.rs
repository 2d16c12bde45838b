//! Riemann zeta by Euler–Maclaurin summation.

use super::BERNOULLI_2K;
use crate::{Complex, Error, Precision};

/// Largest |Im s| the desk-scale summation is tuned for.
const IM_CEILING: f64 = 500.0;

/// zeta(s) for complex s != 1, |Im s| <= 500.
///
/// Plain Euler–Maclaurin with cutoff N growing linearly in |Im s|; the
/// Bernoulli correction terms keep the result accurate well left of the
/// critical strip (Re s > -6 is plenty for every caller here).
pub fn zeta(s: Complex, prec: &Precision) -> Result<Complex, Error> {
    if s == Complex::new(1.0, 0.0) {
        return Err(Error::PoleAtArgument);
    }
    if libm::fabs(s.im) > IM_CEILING {
        return Err(Error::OutOfDomain("zeta: |Im s| > 500"));
    }
    if s.re < -6.0 {
        return Err(Error::OutOfDomain("zeta: Re s < -6"));
    }
    let guard = prec.working_guard_digits as f64;
    let n = (1.3 * (libm::fabs(s.im) + 10.0) + 3.0 * guard) as usize;
    let nf = n as f64;
    let mut sum = Complex::new(0.0, 0.0);
    for k in 1..n {
        sum += (-s * libm::log(k as f64)).exp();
    }
    let npow = (-s * libm::log(nf)).exp(); // N^{-s}
    sum += 0.5 * npow;
    sum += npow * nf / (s - 1.0); // N^{1-s}/(s-1)
    // Bernoulli tail: sum_k B_2k/(2k)! * (s)_{2k-1} * N^{-s-2k+1}
    let mut poch = s; // (s)_1
    let mut fact = 1.0; // (2k)! running
    let mut npow_shift = npow * nf; // N^{-s+1}
    for (k, &b) in BERNOULLI_2K.iter().enumerate() {
        let two_k = 2 * (k + 1);
        fact *= ((two_k - 1) * two_k) as f64;
        npow_shift /= nf * nf; // N^{-s-2k+1}
        let term = b / fact * poch * npow_shift;
        sum += term;
        if term.norm() < 1e-19 * sum.norm().max(1e-30) {
            break;
        }
        // extend Pochhammer (s)_{2k-1} -> (s)_{2k+1}
        poch *= (s + (two_k - 1) as f64) * (s + two_k as f64);
        if k == BERNOULLI_2K.len() - 1 && term.norm() > prec.abs_tol {
            return Err(Error::PrecisionExhausted {
                achieved: term.norm(),
                requested: prec.abs_tol,
            });
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }
    fn p() -> Precision {
        Precision::default()
    }

    #[test]
    fn classical_values() {
        assert!((zeta(c(2.0, 0.0), &p()).unwrap().re - PI * PI / 6.0).abs() < 1e-13);
        assert!((zeta(c(4.0, 0.0), &p()).unwrap().re - libm::pow(PI, 4.0) / 90.0).abs() < 1e-13);
        assert!((zeta(c(0.0, 0.0), &p()).unwrap().re + 0.5).abs() < 1e-13);
        assert!((zeta(c(-1.0, 0.0), &p()).unwrap().re + 1.0 / 12.0).abs() < 1e-13);
        // zeta(1/2) = -1.4603545088095868
        assert!((zeta(c(0.5, 0.0), &p()).unwrap().re + 1.4603545088095868).abs() < 1e-12);
    }

    #[test]
    fn first_zero() {
        let z = zeta(c(0.5, 14.134725141734693), &p()).unwrap();
        assert!(z.norm() < 1e-6, "|zeta(rho_1)| = {}", z.norm());
    }

    #[test]
    fn critical_line_value() {
        // mpmath: zeta(0.5+25j) = 0.0049845933640357 - 0.0140123019625834j
        let z = zeta(c(0.5, 25.0), &p()).unwrap();
        assert!((z.re - 0.0049845933640357).abs() < 1e-11, "{z}");
        assert!((z.im + 0.0140123019625834).abs() < 1e-11, "{z}");
    }

    #[test]
    fn functional_equation() {
        // zeta(s) = 2^s pi^{s-1} sin(pi s/2) Gamma(1-s) zeta(1-s)
        use crate::specfun::gamma;
        let pts = [
            c(0.3, 7.0),
            c(-1.5, 20.0),
            c(2.5, -40.0),
            c(0.0, 3.0),
            c(-0.9, -11.0),
            c(2.2, 49.0),
        ];
        for &s in &pts {
            let lhs = zeta(s, &p()).unwrap();
            let chi = (s * libm::log(2.0)).exp()
                * ((s - 1.0) * libm::log(PI)).exp()
                * (s * PI / 2.0).sin()
                * gamma(Complex::new(1.0, 0.0) - s).unwrap();
            let rhs = chi * zeta(Complex::new(1.0, 0.0) - s, &p()).unwrap();
            let rel = (lhs - rhs).norm() / lhs.norm();
            assert!(rel < 1e-9, "s={s}, rel={rel}");
        }
    }

    #[test]
    fn domain_limits() {
        assert!(matches!(zeta(c(0.5, 600.0), &p()), Err(Error::OutOfDomain(_))));
        assert_eq!(zeta(c(1.0, 0.0), &p()), Err(Error::PoleAtArgument));
    }
}
