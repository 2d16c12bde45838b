//! Whittaker W function for integer first index.

use super::gamma::log_gamma;
use crate::{quad, Complex, Error, Precision};

/// W_{kappa, mu}(y) for integer kappa and complex mu, y > 0.
///
/// For kappa <= 0 the Laplace-type integral
///   W = e^{-y/2} y^kappa / Gamma(1/2 - kappa + mu)
///       * int_0^inf e^{-t} t^{mu - kappa - 1/2} (1 + t/y)^{mu + kappa - 1/2} dt
/// converges (Re mu >= 0 assumed); positive kappa is reached by the
/// three-term recurrence
///   W_{k+1} = (y - 2k) W_k - (k - 1/2 - mu)(k - 1/2 + mu) W_{k-1},
/// which is stable upward because W is the dominant member.
pub fn whittaker_w(kappa: i32, mu: Complex, y: f64, prec: &Precision) -> Result<Complex, Error> {
    if y <= 0.0 {
        return Err(Error::OutOfDomain("whittaker_w: y <= 0"));
    }
    if mu.re < 0.0 {
        return Err(Error::OutOfDomain("whittaker_w: Re mu < 0"));
    }
    if kappa <= 0 {
        return w_integral(kappa, mu, y, prec);
    }
    let mut wm = w_integral(-1, mu, y, prec)?;
    let mut w = w_integral(0, mu, y, prec)?;
    for k in 0..kappa {
        let kf = k as f64;
        let next = (y - 2.0 * kf) * w - (kf - 0.5 - mu) * (kf - 0.5 + mu) * wm;
        wm = w;
        w = next;
    }
    Ok(w)
}

fn w_integral(kappa: i32, mu: Complex, y: f64, prec: &Precision) -> Result<Complex, Error> {
    let kf = kappa as f64;
    let a = mu - kf + 0.5; // t-exponent + 1; Re a >= 1/2 for kappa <= 0
    let b = mu + kf - 0.5;
    // log-substitution t = e^v: integrand e^{-e^v} e^{v a} (1 + e^v / y)^b
    let re_a = a.re;
    let v_min = libm::log(1e-18) / re_a.max(0.5) - 2.0;
    let v_max = 7.0; // e^7 ~ 1100, e^{-t} below 1e-19 well before
    let osc = libm::fabs(mu.im).max(1.0);
    let n_panels = (((v_max - v_min) * osc / 1.2) as usize).clamp(16, 4000);
    let edges = quad::linspace_edges(v_min, v_max, n_panels);
    let inner = Precision {
        abs_tol: prec.abs_tol.min(1e-14),
        rel_tol: prec.rel_tol.min(1e-12),
        ..*prec
    };
    let integral = quad::integrate_panels(
        |v| {
            let t = libm::exp(v);
            let base = Complex::new(1.0 + t / y, 0.0);
            (Complex::new(-t + 0.0, 0.0) + a * v + b * base.ln()).exp()
        },
        &edges,
        &inner,
    )?;
    let lg = log_gamma(mu - kf + 0.5)?;
    let pref = (Complex::new(-y / 2.0 + kf * libm::log(y), 0.0) - lg).exp();
    Ok(pref * integral.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn p() -> Precision {
        Precision::default()
    }

    #[test]
    fn k_bessel_special_case() {
        // W_{0, nu}(2z) = sqrt(2 z / pi) K_nu(z)
        use super::super::bessel::bessel_k;
        let z = 1.7;
        let nu = Complex::new(0.0, 2.0);
        let w = whittaker_w(0, nu, 2.0 * z, &p()).unwrap();
        let k = bessel_k(nu, z, &p()).unwrap();
        let expect = libm::sqrt(2.0 * z / PI) * k;
        assert!((w - expect).norm() < 1e-10, "{w} vs {expect}");
    }

    #[test]
    fn discrete_series_closed_form() {
        // W_{l, l-1/2}(y) = y^l e^{-y/2}
        let y = 2.2;
        for l in 1..=4 {
            let w = whittaker_w(l, Complex::new(l as f64 - 0.5, 0.0), y, &p()).unwrap();
            let expect = libm::pow(y, l as f64) * libm::exp(-y / 2.0);
            assert!(
                (w.re - expect).abs() < 1e-9 * expect && w.im.abs() < 1e-9,
                "l={l}: {w} vs {expect}"
            );
        }
    }

    #[test]
    fn frozen_values() {
        // mpmath: whitw(1, 0.7j, 4 pi) = 0.0221231337479717
        let w = whittaker_w(1, Complex::new(0.0, 0.7), 4.0 * PI, &p()).unwrap();
        assert!((w.re - 0.0221231337479717).abs() < 1e-10, "{w}");
        assert!(w.im.abs() < 1e-10);
        // mpmath: whitw(-2, 1.3j, 5) = 0.0011001959573871
        let w = whittaker_w(-2, Complex::new(0.0, 1.3), 5.0, &p()).unwrap();
        assert!((w.re - 0.0011001959573871).abs() < 1e-11, "{w}");
        // mpmath: whitw(2, 2.5, 6) = 3.8170085748695690
        let w = whittaker_w(2, Complex::new(2.5, 0.0), 6.0, &p()).unwrap();
        assert!((w.re - 3.8170085748695690).abs() < 1e-8, "{w}");
    }
}
