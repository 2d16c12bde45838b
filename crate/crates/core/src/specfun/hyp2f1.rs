//! Gauss hypergeometric 2F1 on the negative real axis.
//!
//! Arguments z <= 0 only; that is all the kernel closed forms need
//! (z = -1/r with r > 0). The argument is mapped by z -> z/(z-1) into
//! [0, 1) where the series converges; close to 1 the connection formula
//! at 1-w takes over, including the logarithmic degenerate case
//! c - a - b = 0 that the kernel parameter pattern always produces.

use super::gamma::{log_gamma, polygamma};
use crate::{Complex, Error, Precision};

const ONE: Complex = Complex::new(1.0, 0.0);

/// 2F1(a, b; c; z) for real z <= 0, complex parameters.
pub fn hyp2f1(a: Complex, b: Complex, c: Complex, z: f64, prec: &Precision) -> Result<Complex, Error> {
    if z > 0.0 {
        return Err(Error::NotInConvergenceRegion);
    }
    if is_nonpositive_int(c) {
        return Err(Error::PoleAtArgument);
    }
    if z == 0.0 {
        return Ok(ONE);
    }
    if z >= -0.5 {
        return series(a, b, c, Complex::new(z, 0.0), prec);
    }
    // Pfaff: F(a,b;c;z) = (1-z)^{-a} F(a, c-b; c; z/(z-1)); w in (1/3, 1).
    let w = z / (z - 1.0);
    let pref = (-a * libm::log(1.0 - z)).exp();
    let f = if w <= 0.995 {
        series(a, c - b, c, Complex::new(w, 0.0), prec)?
    } else {
        match near_one(a, c - b, c, w, prec) {
            Ok(v) => v,
            // integer c-a-b != 0: terms decay like w^k / k^{1+m}, the
            // plain series still converges inside the budget
            Err(Error::Degenerate(_)) => series(a, c - b, c, Complex::new(w, 0.0), prec)?,
            Err(e) => return Err(e),
        }
    };
    Ok(pref * f)
}

fn is_nonpositive_int(z: Complex) -> bool {
    z.im == 0.0 && z.re <= 0.25 && libm::fabs(z.re - libm::round(z.re)) < 1e-300
}

/// Plain Gauss series at |w| < 1.
fn series(a: Complex, b: Complex, c: Complex, w: Complex, prec: &Precision) -> Result<Complex, Error> {
    let mut term = ONE;
    let mut sum = ONE;
    for k in 0..prec.max_terms {
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * w;
        sum += term;
        if term.norm() < 1e-17 * sum.norm().max(1e-300) {
            return Ok(sum);
        }
        // terminating polynomial case
        if term.norm() == 0.0 {
            return Ok(sum);
        }
    }
    Err(Error::PrecisionExhausted {
        achieved: term.norm(),
        requested: prec.abs_tol,
    })
}

/// Connection at 1-w for w close to 1.
fn near_one(a: Complex, b: Complex, c: Complex, w: f64, prec: &Precision) -> Result<Complex, Error> {
    let s = c - a - b;
    let u = 1.0 - w;
    if s.norm() < 1e-9 {
        return log_case(a, b, w, prec);
    }
    let sn = libm::round(s.re);
    if s.im == 0.0 && libm::fabs(s.re - sn) < 1e-9 {
        return Err(Error::Degenerate("2F1 connection: integer c-a-b != 0"));
    }
    let t1 = gamma_ratio(&[c, s], &[c - a, c - b])? * series(a, b, ONE - s, Complex::new(u, 0.0), prec)?;
    let t2 = gamma_ratio(&[c, -s], &[a, b])?
        * (s * libm::log(u)).exp()
        * series(c - a, c - b, ONE + s, Complex::new(u, 0.0), prec)?;
    Ok(t1 + t2)
}

/// F(a, b; a+b; w) for w near 1: digamma/log limit form.
fn log_case(a: Complex, b: Complex, w: f64, prec: &Precision) -> Result<Complex, Error> {
    let u = 1.0 - w;
    let lu = libm::log(u);
    let pref = gamma_ratio(&[a + b], &[a, b])?;
    let mut psi_a = polygamma(0, a)?;
    let mut psi_b = polygamma(0, b)?;
    let mut psi_k = -0.57721566490153286061; // psi(1)
    let mut coef = ONE; // (a)_k (b)_k / (k!)^2
    let mut sum = Complex::new(0.0, 0.0);
    for k in 0..prec.max_terms {
        let kf = k as f64;
        if k > 0 {
            coef *= (a + (kf - 1.0)) * (b + (kf - 1.0)) / (kf * kf);
            psi_a += 1.0 / (a + (kf - 1.0));
            psi_b += 1.0 / (b + (kf - 1.0));
            psi_k += 1.0 / kf;
        }
        let term = coef
            * (Complex::new(2.0 * psi_k - lu, 0.0) - psi_a - psi_b)
            * libm::pow(u, kf);
        sum += term;
        if k > 2 && term.norm() < 1e-17 * sum.norm().max(1e-300) {
            return Ok(pref * sum);
        }
    }
    Err(Error::PrecisionExhausted {
        achieved: 0.0,
        requested: prec.abs_tol,
    })
}

/// prod Gamma(num) / prod Gamma(den), zero when a denominator hits a pole.
fn gamma_ratio(num: &[Complex], den: &[Complex]) -> Result<Complex, Error> {
    let mut lg = Complex::new(0.0, 0.0);
    for &n in num {
        lg += log_gamma(n)?;
    }
    for &d in den {
        match log_gamma(d) {
            Ok(v) => lg -= v,
            Err(Error::PoleAtArgument) => return Ok(Complex::new(0.0, 0.0)),
            Err(e) => return Err(e),
        }
    }
    if lg.re > 700.0 {
        return Err(Error::Overflow);
    }
    Ok(lg.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }
    fn p() -> Precision {
        Precision::default()
    }

    #[test]
    fn real_parameters() {
        let f = hyp2f1(c(0.5, 0.0), c(0.5, 0.0), c(1.0, 0.0), -0.3, &p()).unwrap();
        assert!((f.re - 0.9355074856143313).abs() < 1e-13, "{f}");
        let f = hyp2f1(c(2.0, 0.0), c(2.0, 0.0), c(4.0, 0.0), -30.0, &p()).unwrap();
        assert!((f.re - 0.011086131231894373).abs() < 1e-13, "{f}");
        let f = hyp2f1(c(0.5, 0.0), c(1.5, 0.0), c(2.2, 0.0), -120.0, &p()).unwrap();
        assert!((f.re - 0.12278741961285875).abs() < 1e-11, "{f}");
    }

    #[test]
    fn spectral_parameter_pattern() {
        // a = b = 1/2 + 2i, c = 1 + 4i -- the kernel closed-form pattern.
        let a = c(0.5, 2.0);
        let cc = c(1.0, 4.0);
        let f = hyp2f1(a, a, cc, -0.7, &p()).unwrap();
        assert!((f - c(0.7394903105131222, -0.4677155352566436)).norm() < 1e-13, "{f}");
        let f = hyp2f1(a, a, cc, -50.0, &p()).unwrap();
        assert!((f - c(0.2538507972010331, 0.2403102008548319)).norm() < 1e-12, "{f}");
    }

    #[test]
    fn contiguous_relation() {
        // c(1-z) F(a,b;c;z) - c F(a-1,b;c;z) + (c-b) z F(a,b;c+1;z) = 0
        let cases = [
            (c(0.5, 2.0), c(0.5, 2.0), c(1.0, 4.0), -0.7),
            (c(0.5, 2.0), c(0.5, 2.0), c(1.0, 4.0), -7.0),
            (c(1.3, -0.4), c(0.7, 0.9), c(2.1, 0.5), -0.2),
            (c(3.0, 0.0), c(3.0, 0.0), c(6.0, 0.0), -15.0),
            (c(0.5, 5.0), c(0.5, 5.0), c(1.0, 10.0), -2.0),
        ];
        for &(a, b, cc, z) in &cases {
            let f0 = hyp2f1(a, b, cc, z, &p()).unwrap();
            let fm = hyp2f1(a - 1.0, b, cc, z, &p()).unwrap();
            let fp = hyp2f1(a, b, cc + 1.0, z, &p()).unwrap();
            let res = cc * (1.0 - z) * f0 - cc * fm + (cc - b) * z * fp;
            let scale = (cc * f0).norm().max(1.0);
            assert!(res.norm() / scale < 1e-9, "a={a} z={z}: {}", res.norm());
        }
    }

    #[test]
    fn logarithmic_fallback_deep_argument() {
        // z = -4000 puts w = z/(z-1) past the series cutoff; c-a-b = 0.
        let a = c(0.5, 1.0);
        let cc = c(1.0, 2.0);
        let f = hyp2f1(a, a, cc, -4000.0, &p()).unwrap();
        // mpmath: hyp2f1(0.5+1j, 0.5+1j, 1+2j, -4000)
        assert!((f - c(0.0654888646005496, -0.0260890966870107)).norm() < 1e-12, "{f}");
        // just inside the pure-series switchover (w ~ 0.944)
        let f = hyp2f1(a, a, cc, -17.0, &p()).unwrap();
        assert!((f - c(-0.1331421696789413, -0.4335560300463399)).norm() < 1e-12, "{f}");
    }

    #[test]
    fn domain_errors() {
        assert_eq!(
            hyp2f1(c(1.0, 0.0), c(1.0, 0.0), c(2.0, 0.0), 0.3, &p()),
            Err(Error::NotInConvergenceRegion)
        );
        assert_eq!(
            hyp2f1(c(1.0, 0.0), c(1.0, 0.0), c(-2.0, 0.0), -0.3, &p()),
            Err(Error::PoleAtArgument)
        );
    }
}
