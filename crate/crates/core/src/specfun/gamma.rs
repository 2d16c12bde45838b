//! Complex log-gamma, gamma and polygamma.

use super::BERNOULLI_2K;
use crate::{Complex, Error};
use core::f64::consts::PI;

const STIRLING_RADIUS: f64 = 22.0;

fn is_nonpositive_integer(z: Complex) -> bool {
    z.im == 0.0 && z.re <= 0.5 && libm::fabs(z.re - libm::round(z.re)) == 0.0
}

/// Stirling series for log Gamma, valid for large |z| with Re z > 0.
fn log_gamma_stirling(z: Complex) -> Complex {
    let mut s = (z - 0.5) * z.ln() - z + 0.5 * libm::log(2.0 * PI);
    let z2 = z * z;
    let mut zp = z;
    for (k, &b) in BERNOULLI_2K.iter().enumerate().take(10) {
        let kf = (k + 1) as f64; // B_{2k} with 2k = 2(k+1)
        let term = b / (2.0 * kf * (2.0 * kf - 1.0)) / zp;
        s += term;
        if term.norm() < 1e-18 * s.norm() {
            break;
        }
        zp *= z2;
    }
    s
}

/// Principal-branch log Gamma for complex arguments.
///
/// Uses the Stirling series after shifting the argument out to
/// |z| > 22, and the reflection formula for Re z < 0.5. Poles at the
/// nonpositive integers are reported, not returned as infinities.
pub fn log_gamma(z: Complex) -> Result<Complex, Error> {
    if is_nonpositive_integer(z) {
        return Err(Error::PoleAtArgument);
    }
    if z.re < 0.5 {
        // log Gamma(z) = log(pi / sin(pi z)) - log Gamma(1 - z), up to
        // the branch bookkeeping of log sin; downstream consumers only
        // exponentiate or take differences, so the principal value of
        // each factor is sufficient.
        let refl = log_sin_pi(z);
        let lg = log_gamma(Complex::new(1.0, 0.0) - z)?;
        return Ok(Complex::new(libm::log(PI), 0.0) - refl - lg);
    }
    let mut shift = Complex::new(0.0, 0.0);
    let mut w = z;
    while w.norm() < STIRLING_RADIUS {
        shift += w.ln();
        w += 1.0;
    }
    Ok(log_gamma_stirling(w) - shift)
}

/// log sin(pi z) computed without overflow for large |Im z|.
fn log_sin_pi(z: Complex) -> Complex {
    let ipz = Complex::new(0.0, PI) * z;
    let two_i = Complex::new(0.0, 2.0);
    if z.im > 0.0 {
        // sin(pi z) = e^{-i pi z} (e^{2 i pi z} - 1) / (2i); the surviving
        // exponential e^{2 i pi z} has modulus < 1 here.
        -ipz + (((2.0 * ipz).exp() - 1.0) / two_i).ln()
    } else {
        ipz + ((Complex::new(1.0, 0.0) - (-2.0 * ipz).exp()) / two_i).ln()
    }
}

/// Gamma function via `exp(log_gamma)`.
pub fn gamma(z: Complex) -> Result<Complex, Error> {
    let lg = log_gamma(z)?;
    if lg.re > 709.0 {
        return Err(Error::Overflow);
    }
    Ok(lg.exp())
}

/// Polygamma psi^(m) for complex argument, orders 0..=6.
///
/// Asymptotic series after shifting to |z| >= 24; the recurrence
/// psi^(m)(z) = psi^(m)(z+1) - (-1)^m m! z^(-m-1) removes the shift.
pub fn polygamma(m: u32, z: Complex) -> Result<Complex, Error> {
    if m > 6 {
        return Err(Error::OutOfDomain("polygamma order > 6"));
    }
    if is_nonpositive_integer(z) {
        return Err(Error::PoleAtArgument);
    }
    let mut w = z;
    let mut acc = Complex::new(0.0, 0.0);
    let mf = factorial(m);
    let sign_m = if m % 2 == 0 { 1.0 } else { -1.0 };
    while w.norm() < 24.0 || w.re < 1.0 {
        // psi^(m)(w) = psi^(m)(w+1) - (-1)^m m! w^{-m-1}
        acc -= sign_m * mf * w.powf(-(m as f64 + 1.0));
        w += 1.0;
        if w.re > 1e6 {
            return Err(Error::NotInConvergenceRegion);
        }
    }
    Ok(acc + polygamma_asymptotic(m, w))
}

fn factorial(n: u32) -> f64 {
    (1..=n as u64).fold(1.0, |a, k| a * k as f64)
}

fn polygamma_asymptotic(m: u32, z: Complex) -> Complex {
    if m == 0 {
        let mut s = z.ln() - 0.5 / z;
        let z2 = z * z;
        let mut zp = z2;
        for (k, &b) in BERNOULLI_2K.iter().enumerate().take(10) {
            let two_k = 2.0 * (k + 1) as f64;
            s -= b / (two_k * zp);
            zp *= z2;
        }
        s
    } else {
        // psi^(m)(z) = (-1)^{m-1} [ (m-1)!/z^m + m!/(2 z^{m+1})
        //              + sum_k B_2k (2k+m-1)!/(2k)! z^{-2k-m} ]
        let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
        let mf1 = factorial(m - 1);
        let mf = factorial(m);
        let mut s = mf1 * z.powf(-(m as f64)) + 0.5 * mf * z.powf(-(m as f64) - 1.0);
        for (k, &b) in BERNOULLI_2K.iter().enumerate().take(10) {
            let two_k = 2 * (k + 1) as u32;
            let num = factorial_ratio(two_k + m - 1, two_k);
            s += b * num * z.powf(-(two_k as f64) - m as f64);
        }
        sign * s
    }
}

/// (n)! / (d)! for n >= d, as f64.
fn factorial_ratio(n: u32, d: u32) -> f64 {
    ((d + 1)..=n).fold(1.0, |a, k| a * k as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn gamma_integers_and_half() {
        assert!((gamma(c(5.0, 0.0)).unwrap().re - 24.0).abs() < 1e-12);
        assert!((gamma(c(0.5, 0.0)).unwrap().re - libm::sqrt(PI)).abs() < 1e-13);
        // Gamma(1/2 + i), |.|^2 = pi / cosh(pi * 1)
        let g = gamma(c(0.5, 1.0)).unwrap();
        assert!((g.norm_sqr() - PI / libm::cosh(PI)).abs() < 1e-12);
    }

    #[test]
    fn log_gamma_against_mpmath() {
        // mpmath: loggamma(3.5 + 2.5j) = 0.2607461332196319 + 2.9967340228295380j
        let lg = log_gamma(c(3.5, 2.5)).unwrap();
        assert!((lg.re - 0.2607461332196319).abs() < 1e-12, "{lg}");
        assert!((lg.im - 2.9967340228295380).abs() < 1e-12, "{lg}");
        // mpmath: loggamma(0.5 + 40j) = -61.9129145385911920 + 107.5562198692090612j
        let lg = log_gamma(c(0.5, 40.0)).unwrap();
        assert!((lg.re + 61.9129145385911920).abs() < 1e-10, "{lg}");
        assert!((lg.im - 107.5562198692090612).abs() < 1e-10, "{lg}");
    }

    #[test]
    fn reflection_formula_random() {
        // Gamma(z) Gamma(1-z) sin(pi z) = pi on a deterministic scatter, |z| <= 10.
        let mut seed = 0x9e3779b97f4a7c15u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let mut checked = 0;
        while checked < 200 {
            let z = c(next() * 10.0, next() * 10.0);
            if is_nonpositive_integer(z) || is_nonpositive_integer(Complex::new(1.0, 0.0) - z) {
                continue;
            }
            if libm::fabs(z.im) < 0.05 && libm::fabs(z.re - libm::round(z.re)) < 0.05 {
                continue; // too close to poles for a fixed tolerance
            }
            let lhs = gamma(z);
            let rhs = gamma(Complex::new(1.0, 0.0) - z);
            if let (Ok(a), Ok(b)) = (lhs, rhs) {
                let sin = (z * PI).sin();
                let prod = a * b * sin;
                let rel = (prod - Complex::new(PI, 0.0)).norm() / PI;
                assert!(rel < 1e-10, "z={z}, rel={rel}");
                checked += 1;
            } else {
                continue;
            }
        }
    }

    #[test]
    fn digamma_values() {
        // psi(1) = -euler_gamma
        let e = polygamma(0, c(1.0, 0.0)).unwrap();
        assert!((e.re + 0.5772156649015328606).abs() < 1e-13);
        // mpmath: digamma(0.5+14.134725j) = 2.6484258007017922 + 1.5707963267948966j
        let d = polygamma(0, c(0.5, 14.134725)).unwrap();
        assert!((d.re - 2.6484258007017922).abs() < 1e-11, "{d}");
        assert!((d.im - 1.5707963267948966).abs() < 1e-11, "{d}");
    }

    #[test]
    fn trigamma_and_higher() {
        // psi'(1) = pi^2/6
        let t = polygamma(1, c(1.0, 0.0)).unwrap();
        assert!((t.re - PI * PI / 6.0).abs() < 1e-12);
        // psi''(1) = -2 zeta(3)
        let t2 = polygamma(2, c(1.0, 0.0)).unwrap();
        assert!((t2.re + 2.0 * 1.2020569031595942854).abs() < 1e-11);
        // psi'''(1) = 6 zeta(4) = pi^4/15
        let t3 = polygamma(3, c(1.0, 0.0)).unwrap();
        assert!((t3.re - libm::pow(PI, 4.0) / 15.0).abs() < 1e-10);
    }

    #[test]
    fn recurrence_property() {
        // Gamma(z+1) = z Gamma(z) across a scatter, rel 1e-12.
        let pts = [
            c(0.3, 0.0),
            c(2.7, -1.3),
            c(-3.4, 0.9),
            c(0.5, 21.0),
            c(7.1, 7.1),
            c(-0.5, -4.0),
        ];
        for &z in &pts {
            let a = gamma(z + 1.0).unwrap();
            let b = z * gamma(z).unwrap();
            assert!((a - b).norm() / a.norm() < 1e-12, "z={z}");
        }
    }

    #[test]
    fn poles_reported() {
        assert_eq!(log_gamma(c(0.0, 0.0)), Err(Error::PoleAtArgument));
        assert_eq!(log_gamma(c(-3.0, 0.0)), Err(Error::PoleAtArgument));
        assert_eq!(polygamma(1, c(-1.0, 0.0)), Err(Error::PoleAtArgument));
    }
}
