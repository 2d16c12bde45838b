//! Kirillov model of the spectral representations: Jacquet vectors
//! restricted to the diagonal, the resulting functions on R^x, the
//! Bessel action of the Weyl element, the local Mellin functional
//! equation, and unitarity checks.
//!
//! The basic object is
//!
//!   phi(p, delta, nu, y) = (-1)^p pi^{1/2+nu}
//!                          W_{delta p, nu}(4 pi y) / Gamma(delta p + 1/2 + nu),
//!
//! the weight-2p Jacquet vector evaluated on the diagonal a[y]. Gluing
//! the two signs along u = 0 gives K phi(u) = phi(p, sgn u, nu, |u|),
//! and finite linear combinations of these are everything the rest of
//! the crate needs: the Weyl element acts on them through the j-kernel
//! integral, reproducing (-1)^p K phi_p, and K is unitary onto
//! L^2(R^x, pi^{-1} d^x u).

use crate::kernels::{j_kernel, SpectralPoint};
use crate::specfun::{log_gamma, whittaker_w, zeta};
use crate::{quad, Complex, Error, Precision};
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::PI;

fn zero() -> Complex {
    Complex::new(0.0, 0.0)
}

/// 1/Gamma(z), with the poles mapped to the honest value 0.
fn recip_gamma(z: Complex) -> Complex {
    match log_gamma(z) {
        Ok(lg) => (-lg).exp(),
        Err(_) => zero(),
    }
}

// ---------------------------------------------------------------------------
// Whittaker W tuned for the inner loops here. The public specfun
// routine goes through a Laplace integral on every call, which is far
// too slow inside nested quadratures; this version dispatches on
// parameter region and only falls back to the integral on the leftover
// wedge (negative first index at moderate argument), guided by honest
// error estimates.

/// Exact finite sum for kappa - mu - 1/2 a nonnegative integer (the
/// discrete series): W = e^{-z/2} z^kappa sum_{n<=m} c_n z^{-n}.
fn w_terminating(kappa: f64, mu: f64, z: f64) -> Complex {
    let m = libm::round(kappa - mu - 0.5) as usize;
    let mut sum = 1.0;
    let mut term = 1.0;
    for n in 1..=m {
        let d = kappa - n as f64 + 0.5;
        term *= (mu * mu - d * d) / (n as f64 * z);
        sum += term;
    }
    Complex::new(libm::exp(-0.5 * z + kappa * libm::log(z)) * sum, 0.0)
}

/// Divergent large-z expansion, truncated at the smallest term; returns
/// (value, error estimate).
fn w_asymptotic(kappa: Complex, mu: Complex, z: f64) -> (Complex, f64) {
    let mut sum = Complex::new(1.0, 0.0);
    let mut term = Complex::new(1.0, 0.0);
    let mut smallest = 1.0_f64;
    for n in 1..=80 {
        let d = kappa - n as f64 + 0.5;
        term = term * (mu * mu - d * d) / (n as f64 * z);
        let t = term.norm();
        if t >= smallest {
            break;
        }
        sum += term;
        smallest = t;
        if t < 1e-18 {
            break;
        }
    }
    let pref = (Complex::new(-0.5 * z, 0.0) + kappa * libm::log(z)).exp();
    (pref * sum, pref.norm() * smallest)
}

/// Defining series through the two M-branches; the estimate tracks the
/// cancellation between the partial-sum peaks and the final value.
fn w_two_series(kappa: Complex, mu: Complex, z: f64) -> Result<(Complex, f64), Error> {
    let mut total = zero();
    let mut peak_scale = 0.0_f64;
    for sgn in [1.0, -1.0] {
        let m = mu * sgn;
        let a = m - kappa + 0.5;
        let b = 2.0 * m + 1.0;
        let mut term = Complex::new(1.0, 0.0);
        let mut sum = term;
        let mut peak = 1.0_f64;
        let mut n = 0.0;
        loop {
            term = term * (a + n) * z / ((b + n) * (n + 1.0));
            sum += term;
            peak = peak.max(sum.norm());
            n += 1.0;
            if term.norm() < 1e-18 * sum.norm().max(1e-300) || n > 500.0 {
                break;
            }
        }
        let lp = log_gamma(-2.0 * m)? - log_gamma(0.5 - m - kappa)?
            + Complex::new(-0.5 * z + (0.5 + m.re) * libm::log(z), m.im * libm::log(z));
        let pref = lp.exp();
        total += pref * sum;
        peak_scale = peak_scale.max(pref.norm() * peak);
    }
    Ok((total, peak_scale * 4.4e-16))
}

/// W_{kappa, mu}(z) for complex indices and z > 0.
fn whittaker_any(kappa: Complex, mu: Complex, z: f64, prec: &Precision) -> Result<Complex, Error> {
    if !(z > 0.0) {
        return Err(Error::OutOfDomain("whittaker: z <= 0"));
    }
    // W is even in mu; keep Re mu >= 0 for every sub-path.
    let mu = if mu.re < 0.0 { -mu } else { mu };
    if kappa.im == 0.0 && mu.im == 0.0 {
        let m = kappa.re - mu.re - 0.5;
        let half_odd = libm::fabs(2.0 * mu.re - libm::round(2.0 * mu.re)) < 1e-12;
        if half_odd && m > -1e-9 && libm::fabs(m - libm::round(m)) < 1e-9 {
            return Ok(w_terminating(kappa.re, mu.re, z));
        }
    }
    let ok = |v: Complex, est: f64| est <= prec.abs_tol.max(v.norm() * 1e-9);
    let mut best = f64::INFINITY;
    if z >= 16.0 {
        let (v, est) = w_asymptotic(kappa, mu, z);
        if ok(v, est) {
            return Ok(v);
        }
        best = best.min(est);
    }
    if z <= 45.0 {
        if let Ok((v, est)) = w_two_series(kappa, mu, z) {
            if ok(v, est) {
                return Ok(v);
            }
            best = best.min(est);
        }
    }
    if kappa.im == 0.0 && libm::fabs(kappa.re - libm::round(kappa.re)) < 1e-12 {
        return whittaker_w(libm::round(kappa.re) as i32, mu, z, prec);
    }
    Err(Error::PrecisionExhausted {
        achieved: best,
        requested: prec.abs_tol,
    })
}

// ---------------------------------------------------------------------------

/// phi(p, delta, nu, y): the weight-2p Jacquet vector on the diagonal.
///
/// For a discrete point with ell >= 1 the minus side is annihilated
/// (exact 0) and the support starts at p = ell; below that the request
/// is out of domain.
pub fn jacquet_phi(
    p: i32,
    delta: i32,
    nu: SpectralPoint,
    y: f64,
    prec: &Precision,
) -> Result<Complex, Error> {
    if delta != 1 && delta != -1 {
        return Err(Error::Invalid("jacquet_phi: delta must be +-1"));
    }
    if !(y > 0.0) {
        return Err(Error::OutOfDomain("jacquet_phi: y <= 0"));
    }
    if let SpectralPoint::Discrete { ell } = nu {
        if delta < 0 {
            return Ok(zero());
        }
        if p < ell as i32 {
            return Err(Error::OutOfDomain("jacquet_phi: weight below the bottom"));
        }
    }
    let nuc = nu.nu();
    let kappa = (delta * p) as f64;
    let w = whittaker_any(Complex::new(kappa, 0.0), nuc, 4.0 * PI * y, prec)?;
    let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
    let pref = ((0.5 + nuc) * libm::log(PI) - log_gamma(kappa + 0.5 + nuc)?).exp();
    Ok(sign * pref * w)
}

/// Finite combination sum c_p phi_p at a fixed spectral point.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVector {
    nu: SpectralPoint,
    coeffs: BTreeMap<i32, Complex>,
}

impl WeightVector {
    pub fn new(nu: SpectralPoint) -> Self {
        WeightVector {
            nu,
            coeffs: BTreeMap::new(),
        }
    }

    /// The single basis vector phi_p.
    pub fn single(nu: SpectralPoint, p: i32) -> Result<Self, Error> {
        let mut v = WeightVector::new(nu);
        v.set(p, Complex::new(1.0, 0.0))?;
        Ok(v)
    }

    pub fn nu(&self) -> SpectralPoint {
        self.nu
    }

    /// Sets c_p; zero coefficients drop out of the support.
    pub fn set(&mut self, p: i32, c: Complex) -> Result<(), Error> {
        if let SpectralPoint::Discrete { ell } = self.nu {
            if p < ell as i32 {
                return Err(Error::Invalid("discrete vectors need p >= ell"));
            }
        }
        if c == zero() {
            self.coeffs.remove(&p);
        } else {
            self.coeffs.insert(p, c);
        }
        Ok(())
    }

    pub fn coeff(&self, p: i32) -> Complex {
        self.coeffs.get(&p).copied().unwrap_or_else(zero)
    }

    pub fn support(&self) -> impl Iterator<Item = (i32, Complex)> + '_ {
        self.coeffs.iter().map(|(&p, &c)| (p, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Squared representation norm: sum |c_p|^2 on the unitary line,
    /// pi^{2l-1} sum Gamma(p-l+1)/Gamma(p+l) |c_p|^2 at a discrete
    /// point. Real test points carry no norm here.
    pub fn norm_sq(&self) -> Result<f64, Error> {
        match self.nu {
            SpectralPoint::UnitaryPS { .. } => {
                Ok(self.coeffs.values().map(|c| c.norm_sqr()).sum())
            }
            SpectralPoint::Discrete { ell } => {
                let lf = ell as f64;
                let mut s = 0.0;
                for (&p, c) in &self.coeffs {
                    let lg = log_gamma(Complex::new(p as f64 - lf + 1.0, 0.0))?
                        - log_gamma(Complex::new(p as f64 + lf, 0.0))?;
                    s += libm::exp(lg.re) * c.norm_sqr();
                }
                Ok(libm::exp((2.0 * lf - 1.0) * libm::log(PI)) * s)
            }
            SpectralPoint::RealNu { .. } => {
                Err(Error::OutOfDomain("norm_sq: real test points unsupported"))
            }
        }
    }
}

/// The image K phi as a concrete function on R^x.
#[derive(Debug, Clone)]
pub struct KirillovFunction {
    vector: WeightVector,
    /// Discrete points live on (0, inf); the left half-line is an
    /// exact zero there rather than part of the domain.
    pub positive_only: bool,
}

impl KirillovFunction {
    pub fn new(vector: WeightVector) -> Self {
        let positive_only = matches!(vector.nu, SpectralPoint::Discrete { .. });
        KirillovFunction {
            vector,
            positive_only,
        }
    }

    pub fn vector(&self) -> &WeightVector {
        &self.vector
    }

    pub fn eval(&self, u: f64, prec: &Precision) -> Result<Complex, Error> {
        kirillov_map(&self.vector, u, prec)
    }
}

/// K phi(u) = phi(p, sgn u, nu, |u|) summed over the support.
pub fn kirillov_map(v: &WeightVector, u: f64, prec: &Precision) -> Result<Complex, Error> {
    if u == 0.0 {
        return Err(Error::OutOfDomain("kirillov_map: u = 0"));
    }
    if u < 0.0 && matches!(v.nu, SpectralPoint::Discrete { .. }) {
        return Ok(zero());
    }
    let delta = if u > 0.0 { 1 } else { -1 };
    let mut s = zero();
    for (p, c) in v.support() {
        s += c * jacquet_phi(p, delta, v.nu, libm::fabs(u), prec)?;
    }
    Ok(s)
}

/// Panel edges in x = log lambda sized against a linear oscillation
/// frequency plus the sqrt-type phase 4 pi sqrt(u e^x) of the j-kernel.
fn log_edges(x_lo: f64, x_hi: f64, lin_freq: f64, sqrt_coeff: f64) -> Vec<f64> {
    let mut edges = alloc::vec![x_lo];
    let mut x = x_lo;
    while x < x_hi {
        let step = 2.5 / (1.0 + lin_freq + sqrt_coeff * libm::exp(0.5 * x));
        x = (x + step.max(1e-3)).min(x_hi);
        edges.push(x);
    }
    edges
}

fn integrate_logged(
    f: &mut dyn FnMut(f64) -> Result<Complex, Error>,
    edges: &[f64],
    prec: &Precision,
) -> Result<Complex, Error> {
    let mut failure: Option<Error> = None;
    let r = quad::integrate_panels(
        |x| match f(x) {
            Ok(v) => v,
            Err(e) => {
                failure = Some(e);
                zero()
            }
        },
        edges,
        prec,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(r.value)
}

/// Largest diagonal coordinate that still matters: K phi decays like
/// e^{-2 pi y} y^{p} past the turning point.
fn diag_cutoff(v: &WeightVector) -> f64 {
    let pmax = v.support().map(|(p, _)| p.abs()).max().unwrap_or(0) as f64;
    let t = libm::fabs(v.nu.nu().im);
    4.0 + 0.8 * pmax + 0.5 * t
}

/// Action of the Weyl element through the kernel integral
/// int over R^x of j_nu(u lambda) K phi(lambda) d^x lambda.
///
/// On the basis vectors this reproduces (-1)^p K phi_p; the integral
/// here is evaluated directly so that reproduction stays a testable
/// statement rather than a definition.
pub fn bessel_action(v: &WeightVector, u: f64, prec: &Precision) -> Result<Complex, Error> {
    if u == 0.0 {
        return Err(Error::OutOfDomain("bessel_action: u = 0"));
    }
    if v.is_zero() {
        return Ok(zero());
    }
    let discrete = matches!(v.nu, SpectralPoint::Discrete { .. });
    if discrete && u < 0.0 {
        // j vanishes on the negative axis for discrete points
        return Ok(zero());
    }
    let x_lo = -18.0;
    let x_hi = libm::log(diag_cutoff(v));
    let t = libm::fabs(v.nu.nu().im);
    let mut total = zero();
    let sides: &[f64] = if discrete { &[1.0] } else { &[1.0, -1.0] };
    for &side in sides {
        let sqrt_coeff = if u * side > 0.0 {
            2.0 * PI * libm::sqrt(libm::fabs(u))
        } else {
            0.0 // kernel side without oscillation
        };
        let edges = log_edges(x_lo, x_hi, 1.0 + 2.0 * t, sqrt_coeff);
        total += integrate_logged(
            &mut |x| {
                let lam = side * libm::exp(x);
                Ok(j_kernel(v.nu, u * lam, prec)? * kirillov_map(v, lam, prec)?)
            },
            &edges,
            prec,
        )?;
    }
    Ok(total)
}

/// Mellin transform Gamma_p(s) of the plus-side Jacquet vector,
/// int_0^inf phi(p, +1, nu, y) y^{s-3/2} dy, for 0 < Re s < 1.
pub fn gamma_p(
    p: i32,
    nu: SpectralPoint,
    s: Complex,
    prec: &Precision,
) -> Result<Complex, Error> {
    if !(s.re > 0.0 && s.re < 1.0) {
        return Err(Error::OutOfDomain("gamma_p: need 0 < Re s < 1"));
    }
    let t = libm::fabs(nu.nu().im);
    let x_lo = (libm::log(1e-13) / s.re).max(-320.0);
    let x_hi = libm::log(6.0 + 0.9 * libm::fabs(p as f64) + 0.5 * t);
    let edges = log_edges(x_lo, x_hi, t + libm::fabs(s.im), 0.0);
    integrate_logged(
        &mut |x| {
            let y = libm::exp(x);
            Ok(jacquet_phi(p, 1, nu, y, prec)? * ((s - 0.5) * x).exp())
        },
        &edges,
        prec,
    )
}

fn wprod_closed_at(alpha: Complex, beta: Complex, mu: Complex) -> Complex {
    let br = recip_gamma(0.5 - alpha + mu) * recip_gamma(0.5 - beta - mu)
        - recip_gamma(0.5 - alpha - mu) * recip_gamma(0.5 - beta + mu);
    PI * br / ((alpha - beta) * (2.0 * PI * mu).sin())
}

/// Closed form of the product integral below. At discrete points the
/// bare expression is 0/0; the value is taken as the symmetric limit
/// across mu = ell - 1/2.
pub fn whittaker_product_closed(
    alpha: Complex,
    beta: Complex,
    nu: SpectralPoint,
) -> Result<Complex, Error> {
    if (alpha - beta).norm() < 1e-12 {
        return Err(Error::Degenerate("whittaker product: equal indices"));
    }
    let mu = nu.nu();
    match nu {
        SpectralPoint::Discrete { .. } => {
            let eps = Complex::new(1e-6, 0.0);
            Ok(0.5 * (wprod_closed_at(alpha, beta, mu + eps) + wprod_closed_at(alpha, beta, mu - eps)))
        }
        _ => {
            if (2.0 * PI * mu).sin().norm() < 1e-12 {
                return Err(Error::Degenerate("whittaker product: sin(2 pi nu) = 0"));
            }
            Ok(wprod_closed_at(alpha, beta, mu))
        }
    }
}

/// int_0^inf W_{alpha,nu}(u) W_{beta,nu}(u) du/u by quadrature in
/// log coordinates.
pub fn whittaker_product_integral(
    alpha: Complex,
    beta: Complex,
    nu: SpectralPoint,
    prec: &Precision,
) -> Result<Complex, Error> {
    if (alpha - beta).norm() < 1e-12 {
        return Err(Error::Degenerate("whittaker product: equal indices"));
    }
    let mu = nu.nu();
    let x_hi = libm::log(90.0 + 25.0 * (alpha.norm() + beta.norm()));
    let freq = 2.0 * libm::fabs(mu.im) + libm::fabs(alpha.im) + libm::fabs(beta.im);
    let edges = log_edges(-30.0, x_hi, freq, 0.0);
    integrate_logged(
        &mut |x| {
            let u = libm::exp(x);
            Ok(whittaker_any(alpha, mu, u, prec)? * whittaker_any(beta, mu, u, prec)?)
        },
        &edges,
        prec,
    )
}

/// |  ||v||^2  -  (1/pi) int |K phi(u)|^2 d^x u  |, the unitarity
/// residual of the Kirillov map on a finite-support vector.
pub fn parseval_check(v: &WeightVector, prec: &Precision) -> Result<f64, Error> {
    let n2 = v.norm_sq()?;
    if v.is_zero() {
        return Ok(n2);
    }
    let discrete = matches!(v.nu, SpectralPoint::Discrete { .. });
    let t = libm::fabs(v.nu.nu().im);
    let x_hi = libm::log(diag_cutoff(v));
    let edges = log_edges(-24.0, x_hi, 1.0 + 2.0 * t, 0.0);
    let sides: &[f64] = if discrete { &[1.0] } else { &[1.0, -1.0] };
    let mut total = 0.0;
    for &side in sides {
        let r = integrate_logged(
            &mut |x| {
                let lam = side * libm::exp(x);
                Ok(Complex::new(kirillov_map(v, lam, prec)?.norm_sqr(), 0.0))
            },
            &edges,
            prec,
        )?;
        total += r.re;
    }
    Ok(libm::fabs(n2 - total / PI))
}

/// Scattering coefficient of the weight-2p Eisenstein vector,
///
///   d_p(nu) = (-1)^p pi Gamma(2 nu) zeta(2 nu)
///             / (2^{2nu-1} zeta(2nu+1) Gamma(1/2+nu+p) Gamma(1/2+nu-p)),
///
/// satisfying d_p(nu) d_p(-nu) = 1 and |d_p| = 1 on the imaginary axis.
pub fn eisenstein_dp(p: i32, nu: Complex, prec: &Precision) -> Result<Complex, Error> {
    let two_nu = 2.0 * nu;
    let lg = log_gamma(two_nu).map_err(|_| Error::PoleAtArgument)?;
    let z_num = zeta(two_nu, prec)?;
    let z_den = zeta(two_nu + 1.0, prec)?;
    if z_den.norm() < 1e-12 {
        return Err(Error::Degenerate("eisenstein_dp: zeta(2 nu + 1) ~ 0"));
    }
    let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
    let pref = (lg - (two_nu - 1.0) * libm::log(2.0)).exp();
    Ok(sign
        * PI
        * pref
        * z_num
        / z_den
        * recip_gamma(0.5 + nu + p as f64)
        * recip_gamma(0.5 + nu - p as f64))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn p_tol(abs: f64, rel: f64) -> Precision {
        Precision::with_tols(abs, rel)
    }

    fn unitary(t: f64) -> SpectralPoint {
        SpectralPoint::unitary(t)
    }

    #[test]
    fn fast_whittaker_matches_reference() {
        let p = p_tol(1e-12, 1e-10);
        // mpmath: whitw(0.3+0.2j, 0.7j, 2.5)
        let w = whittaker_any(c(0.3, 0.2), c(0.0, 0.7), 2.5, &p).unwrap();
        assert!((w - c(0.31407188498720932, 0.064117878218557038)).norm() < 1e-10, "{w}");
        // mpmath: whitw(2, 3j, 50) -- asymptotic branch
        let w = whittaker_any(c(2.0, 0.0), c(0.0, 3.0), 50.0, &p).unwrap();
        assert!((w.re - 2.7588301196969338e-8).abs() < 1e-17, "{w}");
        // mpmath: whitw(-3, 1.2j, 20) -- the integral fallback wedge
        let w = whittaker_any(c(-3.0, 0.0), c(0.0, 1.2), 20.0, &p).unwrap();
        assert!((w.re - 3.1727444800405749e-9).abs() < 1e-13, "{w}");
        // mpmath: whitw(-2, 1j, 25)
        let w = whittaker_any(c(-2.0, 0.0), c(0.0, 1.0), 25.0, &p).unwrap();
        assert!((w.re - 4.5922155543594117e-9).abs() < 1e-13, "{w}");
        // mpmath: whitw(0, 1j, 1e-8) -- series at tiny argument
        let w = whittaker_any(c(0.0, 0.0), c(0.0, 1.0), 1e-8, &p).unwrap();
        assert!((w.re - 1.7943351305450964e-5).abs() < 1e-14, "{w}");
        // mpmath: whitw(1, 0.25, 12)
        let w = whittaker_any(c(1.0, 0.0), c(0.25, 0.0), 12.0, &p).unwrap();
        assert!((w.re - 0.029283694311497912).abs() < 1e-11, "{w}");
        // mpmath: whitw(8, 5.5, 3) -- terminating discrete sum
        let w = whittaker_any(c(8.0, 0.0), c(5.5, 0.0), 3.0, &p).unwrap();
        assert!((w.re - 14151.584147093865).abs() < 1e-8 * w.re, "{w}");
    }

    #[test]
    fn jacquet_closed_values() {
        let p = p_tol(1e-12, 1e-10);
        // mpmath: -pi^{1/2+i} W_{0,i}(4pi)/Gamma(1/2+i) * (-1)^0
        let v = jacquet_phi(0, 1, unitary(1.0), 1.0, &p).unwrap();
        assert!((v - c(-0.0029241800946773702, 0.0050029110383944829)).norm() < 1e-12, "{v}");
        // p = 0 equals the K-Bessel form on both signs
        let vm = jacquet_phi(0, -1, unitary(1.0), 1.0, &p).unwrap();
        assert!((v - vm).norm() < 1e-13);
        let v = jacquet_phi(1, 1, unitary(0.7), 1.0, &p).unwrap();
        assert!((v - c(-0.040844098652021934, -0.036747078876637726)).norm() < 1e-12, "{v}");
        let v = jacquet_phi(1, -1, unitary(0.7), 1.0, &p).unwrap();
        assert!((v - c(0.0001677471619936892, 0.00015092065675463428)).norm() < 1e-11, "{v}");
        let v = jacquet_phi(2, 1, SpectralPoint::real_nu(0.25).unwrap(), 0.5, &p).unwrap();
        assert!((v.re - 1.6444663973177763).abs() < 1e-10 && v.im.abs() < 1e-12, "{v}");
        let d2 = SpectralPoint::discrete(2).unwrap();
        let v = jacquet_phi(3, 1, d2, 0.8, &p).unwrap();
        assert!((v.re + 1.6506828401217528).abs() < 1e-10 && v.im.abs() < 1e-12, "{v}");
    }

    #[test]
    fn jacquet_discrete_structure() {
        let p = p_tol(1e-12, 1e-10);
        let d2 = SpectralPoint::discrete(2).unwrap();
        // minus side annihilated exactly
        assert_eq!(jacquet_phi(3, -1, d2, 0.7, &p).unwrap(), zero());
        // below the bottom weight
        assert!(matches!(
            jacquet_phi(1, 1, d2, 0.7, &p),
            Err(Error::OutOfDomain(_))
        ));
        // bottom vector: proportional to (4 pi y)^l e^{-2 pi y}
        let y = 0.8;
        let v = jacquet_phi(2, 1, d2, y, &p).unwrap();
        let expect = libm::pow(PI, 2.0) * libm::pow(4.0 * PI * y, 2.0)
            * libm::exp(-2.0 * PI * y)
            / 6.0; // Gamma(2l) = 3!
        assert!((v.re - expect).abs() < 1e-12 * expect.abs(), "{v} vs {expect}");
    }

    #[test]
    fn jacquet_matches_oscillatory_contour() {
        // independent route: y^{1/2-nu} int e^{2 pi i y xi} (xi^2+1)^{-1/2-nu}
        // ((xi+i)/(xi-i))^p dxi, the real tails rotated into vertical rays
        // where the exponential decays.
        let p = p_tol(1e-10, 1e-10);
        let nu = c(0.0, 0.7);
        let y = 1.0;
        let g = |xi: Complex| -> Complex {
            let phase = (c(0.0, 2.0 * PI * y) * xi).exp();
            let pw = (-(0.5 + nu) * (xi * xi + 1.0).ln()).exp();
            phase * pw * ((xi + c(0.0, 1.0)) / (xi - c(0.0, 1.0)))
        };
        let x_cut = 40.0;
        let base = quad::integrate_panels(
            |x| g(c(x, 0.0)),
            &quad::linspace_edges(-x_cut, x_cut, 240),
            &p,
        )
        .unwrap()
        .value;
        let ray = |side: f64| {
            quad::integrate_panels(
                |t| c(0.0, 1.0) * g(c(side * x_cut, t)),
                &quad::linspace_edges(0.0, 9.0, 40),
                &p,
            )
            .unwrap()
            .value
        };
        // y = 1, so the y^{1/2-nu} prefactor is 1
        let via_integral = base + ray(1.0) - ray(-1.0);
        let direct = jacquet_phi(1, 1, unitary(0.7), y, &p).unwrap();
        assert!(
            (via_integral - direct).norm() < 1e-6,
            "{via_integral} vs {direct}"
        );
    }

    #[test]
    fn kirillov_map_values_and_flags() {
        let p = p_tol(1e-12, 1e-10);
        let v = WeightVector::single(unitary(1.0), 0).unwrap();
        let k = kirillov_map(&v, 1.0, &p).unwrap();
        assert!((k - c(-0.0029241800946773702, 0.0050029110383944829)).norm() < 1e-12);
        // zero vector
        let z = WeightVector::new(unitary(1.0));
        assert_eq!(kirillov_map(&z, 2.0, &p).unwrap(), zero());
        assert!(kirillov_map(&z, 0.0, &p).is_err());
        // discrete: left half-line is an exact zero, and the function
        // object records the one-sided domain
        let d = WeightVector::single(SpectralPoint::discrete(1).unwrap(), 1).unwrap();
        assert_eq!(kirillov_map(&d, -0.5, &p).unwrap(), zero());
        let f = KirillovFunction::new(d);
        assert!(f.positive_only);
        assert!(f.eval(0.5, &p).unwrap().norm() > 0.0);
        let u = KirillovFunction::new(WeightVector::single(unitary(1.0), 0).unwrap());
        assert!(!u.positive_only);
        // discrete support constraint on construction
        let mut bad = WeightVector::new(SpectralPoint::discrete(3).unwrap());
        assert!(bad.set(2, c(1.0, 0.0)).is_err());
        assert!(bad.set(3, c(1.0, 0.0)).is_ok());
    }

    #[test]
    fn kirillov_decay_surrogates() {
        let p = p_tol(1e-12, 1e-10);
        for pp in 0..=2 {
            let v = WeightVector::single(unitary(1.0), pp).unwrap();
            // small |u|: |K phi_p(u)| <= 2 (|p| + |nu| + 1) |u|^{0.49}
            let bound = 2.0 * (pp as f64 + 2.0);
            for &u in &[1e-3, 0.03, 0.3, 1.0] {
                for sgn in [1.0, -1.0] {
                    let k = kirillov_map(&v, sgn * u, &p).unwrap().norm();
                    assert!(k <= bound * libm::pow(u, 0.49), "p={pp} u={u} k={k}");
                }
            }
            // far tail: four orders below the u = 1 size well before
            // 10 (|p| + 2), and still shrinking fast
            let k1 = kirillov_map(&v, 1.0, &p).unwrap().norm();
            let far = 10.0 * (pp as f64 + 2.0);
            let kf = kirillov_map(&v, far, &p).unwrap().norm();
            assert!(kf < 1e-6 * k1, "p={pp}: {kf} vs {k1}");
            let kf2 = kirillov_map(&v, far + 1.0, &p).unwrap().norm();
            assert!(kf2 < 0.05 * kf, "exponential-type decay fails at p={pp}");
        }
    }

    #[test]
    fn bessel_action_self_reproduction_principal() {
        let p = p_tol(1e-7, 1e-7);
        for &t in &[1.0, 3.0] {
            for pp in 0..=2 {
                let v = WeightVector::single(unitary(t), pp).unwrap();
                let sign = if pp % 2 == 0 { 1.0 } else { -1.0 };
                for &u in &[-4.0, -1.0, -0.25, 0.25, 1.0, 4.0] {
                    let lhs = bessel_action(&v, u, &p).unwrap();
                    let rhs = sign * kirillov_map(&v, u, &p).unwrap();
                    assert!(
                        (lhs - rhs).norm() < 1e-4,
                        "t={t} p={pp} u={u}: {lhs} vs {rhs}"
                    );
                }
            }
        }
    }

    #[test]
    fn bessel_action_self_reproduction_discrete() {
        let p = p_tol(1e-7, 1e-7);
        for &ell in &[1u32, 6] {
            let nu = SpectralPoint::discrete(ell).unwrap();
            let v = WeightVector::single(nu, ell as i32).unwrap();
            let sign = if ell % 2 == 0 { 1.0 } else { -1.0 };
            for &u in &[0.25, 1.0, 4.0] {
                let lhs = bessel_action(&v, u, &p).unwrap();
                let rhs = sign * kirillov_map(&v, u, &p).unwrap();
                assert!(
                    (lhs - rhs).norm() < 1e-4,
                    "ell={ell} u={u}: {lhs} vs {rhs}"
                );
            }
            // supported on u > 0 only
            assert_eq!(bessel_action(&v, -1.0, &p).unwrap(), zero());
        }
    }

    #[test]
    fn gamma_p_mellin_closure() {
        let p = p_tol(1e-10, 1e-9);
        // p = 0 reduces to a K-Bessel Mellin transform:
        // pi^{1/2+nu-s} Gamma((s+nu)/2) Gamma((s-nu)/2) / (2 Gamma(1/2+nu))
        let nu = unitary(1.0);
        let s = c(0.5, 0.2);
        let g = gamma_p(0, nu, s, &p).unwrap();
        let nuc = nu.nu();
        let closed = ((0.5 + nuc - s) * libm::log(PI)
            + log_gamma((s + nuc) / 2.0).unwrap()
            + log_gamma((s - nuc) / 2.0).unwrap()
            - log_gamma(0.5 + nuc).unwrap())
        .exp()
            / 2.0;
        assert!((g - closed).norm() < 1e-8, "{g} vs {closed}");
        // frozen cross-check of the same value (mpmath)
        assert!((g - c(-0.22988496992356692, 1.9017048608592306)).norm() < 1e-8, "{g}");
        // mpmath quad: Gamma_1(0.5+0.3i) at nu = 1.2i
        let g1 = gamma_p(1, unitary(1.2), c(0.5, 0.3), &p).unwrap();
        assert!((g1 - c(-0.87208902479988024, -1.1773100158900424)).norm() < 1e-7, "{g1}");
        // conjugation pairing: conj Gamma_p(s; nu) = Gamma_p(conj s; -nu)
        let a = gamma_p(1, unitary(1.2), c(0.5, -0.3), &p).unwrap();
        let b = gamma_p(1, unitary(-1.2), c(0.5, 0.3), &p).unwrap();
        assert!((a.conj() - b).norm() < 1e-8, "{a} vs {b}");
        // outside the strip
        assert!(matches!(
            gamma_p(0, nu, c(1.2, 0.0), &p),
            Err(Error::OutOfDomain(_))
        ));
    }

    #[test]
    fn local_functional_equation() {
        // (-1)^p Gamma_p(s) = 2^{1-2s} pi^{-2s} Gamma(s+nu) Gamma(s-nu)
        //                     (cos(pi s) Gamma_p(1-s) + cos(pi nu) Gamma_{-p}(1-s))
        let p = p_tol(1e-9, 1e-9);
        let nu = unitary(1.2);
        let nuc = nu.nu();
        let s = c(0.5, 0.3);
        let pp = 1;
        let lhs = -gamma_p(pp, nu, s, &p).unwrap();
        let g = gamma_p(pp, nu, 1.0 - s, &p).unwrap();
        let gm = gamma_p(-pp, nu, 1.0 - s, &p).unwrap();
        let fac = ((1.0 - 2.0 * s) * libm::log(2.0) - 2.0 * s * libm::log(PI)
            + log_gamma(s + nuc).unwrap()
            + log_gamma(s - nuc).unwrap())
        .exp();
        let rhs = fac * ((PI * s).cos() * g + (PI * nuc).cos() * gm);
        assert!((lhs - rhs).norm() < 1e-5, "{lhs} vs {rhs}");
    }

    #[test]
    fn whittaker_product_matches_closed_form() {
        let p = p_tol(1e-9, 1e-9);
        let nu = unitary(0.7);
        let q = whittaker_product_integral(c(1.0, 0.0), c(0.0, 0.0), nu, &p).unwrap();
        let cl = whittaker_product_closed(c(1.0, 0.0), c(0.0, 0.0), nu).unwrap();
        // mpmath: 0.15719514753386862 for both routes
        assert!((cl.re - 0.15719514753386862).abs() < 1e-10 && cl.im.abs() < 1e-10, "{cl}");
        assert!((q - cl).norm() < 1e-6, "{q} vs {cl}");
        // symmetric under swapping the indices
        let sw = whittaker_product_closed(c(0.0, 0.0), c(1.0, 0.0), nu).unwrap();
        assert!((sw - cl).norm() < 1e-12);
        // equal indices are degenerate
        assert!(matches!(
            whittaker_product_integral(c(1.0, 0.0), c(1.0, 0.0), nu, &p),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            whittaker_product_closed(c(2.0, 0.0), c(2.0, 0.0), nu),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn whittaker_product_discrete_limit() {
        // distinct integer indices at mu = ell - 1/2: the closed form is
        // a 0/0 limit and the integrand is polynomial x exponential; both
        // sides agree (here: orthogonality, the limit is zero).
        let p = p_tol(1e-10, 1e-9);
        let nu = SpectralPoint::discrete(1).unwrap();
        let q = whittaker_product_integral(c(1.0, 0.0), c(2.0, 0.0), nu, &p).unwrap();
        let cl = whittaker_product_closed(c(1.0, 0.0), c(2.0, 0.0), nu).unwrap();
        assert!(q.norm() < 1e-8, "{q}");
        assert!(cl.norm() < 1e-5, "{cl}");
        assert!((q - cl).norm() < 1e-5);
    }

    #[test]
    fn parseval_unitary_line() {
        let p = p_tol(1e-9, 1e-8);
        // zero vector
        let z = WeightVector::new(unitary(1.0));
        assert_eq!(parseval_check(&z, &p).unwrap(), 0.0);
        // single phi_0 at nu = i
        let v = WeightVector::single(unitary(1.0), 0).unwrap();
        let r = parseval_check(&v, &p).unwrap();
        assert!(r < 1e-6, "residual {r}");
        // cross terms must cancel: c_0 = 1, c_1 = i at nu = 2i
        let mut v = WeightVector::new(unitary(2.0));
        v.set(0, c(1.0, 0.0)).unwrap();
        v.set(1, c(0.0, 1.0)).unwrap();
        let r = parseval_check(&v, &p).unwrap();
        assert!(r < 1e-6, "residual {r}");
        // unit coefficients on support {0, 1, 2}
        let mut v = WeightVector::new(unitary(1.0));
        for pp in 0..=2 {
            v.set(pp, c(1.0, 0.0)).unwrap();
        }
        let r = parseval_check(&v, &p).unwrap();
        assert!(r < 1e-6, "residual {r}");
    }

    #[test]
    fn parseval_discrete() {
        let p = p_tol(1e-9, 1e-8);
        for &ell in &[1u32, 6] {
            let nu = SpectralPoint::discrete(ell).unwrap();
            let mut v = WeightVector::new(nu);
            for pp in ell as i32..=ell as i32 + 2 {
                v.set(pp, c(1.0, 0.0)).unwrap();
            }
            let r = parseval_check(&v, &p).unwrap();
            assert!(r < 1e-6, "ell={ell} residual {r}");
        }
        // real test points carry no representation norm
        let v = WeightVector::single(SpectralPoint::real_nu(0.25).unwrap(), 0).unwrap();
        assert!(matches!(parseval_check(&v, &p), Err(Error::OutOfDomain(_))));
    }

    #[test]
    fn eisenstein_dp_values_and_relations() {
        let p = p_tol(1e-12, 1e-10);
        let nu = c(0.3, 0.2);
        // mpmath spot values
        let d0 = eisenstein_dp(0, nu, &p).unwrap();
        assert!((d0 - c(-1.5036022609304395, -2.4043216929558265)).norm() < 1e-10, "{d0}");
        let d1 = eisenstein_dp(1, nu, &p).unwrap();
        assert!((d1 - c(-0.97249501456296769, 0.017943895634395176)).norm() < 1e-10, "{d1}");
        let d3 = eisenstein_dp(3, nu, &p).unwrap();
        assert!((d3 - c(-0.46157728986216922, 0.22652036904508823)).norm() < 1e-10, "{d3}");
        // functional relation d_p(nu) d_p(-nu) = 1 across weights
        let nu2 = c(0.3, 2.0);
        for pp in 0..=10 {
            let a = eisenstein_dp(pp, nu2, &p).unwrap();
            let b = eisenstein_dp(pp, -nu2, &p).unwrap();
            assert!((a * b - 1.0).norm() < 1e-10, "p={pp}: {}", (a * b).norm());
        }
        // unit modulus on the imaginary axis
        let d = eisenstein_dp(2, c(0.0, 1.1), &p).unwrap();
        assert!((d.norm() - 1.0).abs() < 1e-12, "{d}");
        // weight recurrence through the Gamma shifts:
        // d_{p+1}/d_p = -(nu - 1/2 - p)/(nu + 1/2 + p)
        for pp in 0..=5 {
            let a = eisenstein_dp(pp, nu, &p).unwrap();
            let b = eisenstein_dp(pp + 1, nu, &p).unwrap();
            let ratio = -(nu - 0.5 - pp as f64) / (nu + 0.5 + pp as f64);
            assert!((b / a - ratio).norm() < 1e-10, "p={pp}");
        }
        // gamma pole reported
        assert!(matches!(
            eisenstein_dp(0, c(-0.5, 0.0), &p),
            Err(Error::PoleAtArgument)
        ));
    }
}
