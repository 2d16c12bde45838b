//! The Bessel-type kernel attached to a spectral point, its Mellin
//! transforms, and the weighted integral transforms that feed the
//! spectral side of the fourth-moment formula.
//!
//! A spectral point is either on the unitary line (nu = it), a discrete
//! half-integer (nu = ell - 1/2), or a real test value |nu| < 1/2. The
//! kernel
//!
//!   j_nu(u) = pi sqrt(|u|)/sin(pi nu) (J^s_{-2nu} - J^s_{2nu})(4 pi sqrt(|u|))
//!
//! (J^+ = J for u > 0, J^- = I for u < 0) collapses for u < 0 to
//! 4 sqrt(|u|) cos(pi nu) K_{2nu}(4 pi sqrt(|u|)), which decays
//! exponentially; the discrete-point kernel vanishes on u < 0 entirely.
//!
//! The two-sided transform against the kernel pair,
//!
//!   Xi(r; nu) = int over R^x of j_0(-u) j_nu(u/r) d^x u / sqrt(|u|),
//!
//! has a hypergeometric closed form, and its g_c-weighted r-integral is
//! the transform Lambda (resp. Theta) multiplying the cubes of central
//! values in the spectral expansion.

use crate::specfun::{
    bessel_j_complex, bessel_j_int, bessel_k, bessel_k_scaled_imag, hyp2f1, log_gamma,
};
use crate::weights::WeightFunction;
use crate::{quad, Complex, Error, Precision};
use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::PI;

/// Sin(pi nu) degenerates at nu = 0; below this |t| the unitary-line
/// evaluations switch to a symmetric two-point limit at t = +-T_LIMIT.
const T_LIMIT: f64 = 1e-3;

/// Spectral parameter: unitary line, discrete series, or a real test
/// value.
///
/// Real points only exercise the kernel layer; the moment assembly never
/// receives one (such representations do not occur in the spectrum).
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum SpectralPoint {
    /// nu = i t.
    UnitaryPS { t: f64 },
    /// nu = ell - 1/2 with ell >= 1.
    Discrete { ell: u32 },
    /// nu = x, |x| < 1/2.
    RealNu { x: f64 },
}

impl SpectralPoint {
    pub fn unitary(t: f64) -> Self {
        SpectralPoint::UnitaryPS { t }
    }

    pub fn discrete(ell: u32) -> Result<Self, Error> {
        if ell == 0 {
            return Err(Error::Invalid("discrete point needs ell >= 1"));
        }
        Ok(SpectralPoint::Discrete { ell })
    }

    pub fn real_nu(x: f64) -> Result<Self, Error> {
        if !(libm::fabs(x) < 0.5) {
            return Err(Error::Invalid("real spectral value needs |x| < 1/2"));
        }
        Ok(SpectralPoint::RealNu { x })
    }

    /// The complex parameter nu this point stands for.
    pub fn nu(&self) -> Complex {
        match *self {
            SpectralPoint::UnitaryPS { t } => Complex::new(0.0, t),
            SpectralPoint::Discrete { ell } => Complex::new(ell as f64 - 0.5, 0.0),
            SpectralPoint::RealNu { x } => Complex::new(x, 0.0),
        }
    }

    /// Stable cache key from the exact parameter bits.
    pub fn key(&self) -> u64 {
        match *self {
            SpectralPoint::UnitaryPS { t } => 0x1000_0000_0000_0000 ^ t.to_bits(),
            SpectralPoint::Discrete { ell } => 0x2000_0000_0000_0000 ^ ell as u64,
            SpectralPoint::RealNu { x } => 0x3000_0000_0000_0000 ^ x.to_bits(),
        }
    }
}

/// j_nu(u) for u != 0. Real for every supported point; returned as
/// complex with zero imaginary part since callers feed it into complex
/// contours.
pub fn j_kernel(nu: SpectralPoint, u: f64, prec: &Precision) -> Result<Complex, Error> {
    if u == 0.0 {
        return Err(Error::OutOfDomain("j_kernel: u = 0"));
    }
    let v = match nu {
        SpectralPoint::Discrete { ell } => {
            if u < 0.0 {
                0.0
            } else {
                let sign = if ell % 2 == 0 { 1.0 } else { -1.0 };
                let a = 4.0 * PI * libm::sqrt(u);
                sign * 2.0 * PI * libm::sqrt(u) * bessel_j_int(2 * ell as i32 - 1, a)?
            }
        }
        SpectralPoint::UnitaryPS { t } => {
            if libm::fabs(t) < T_LIMIT {
                // symmetric two-point limit across the sin(pi nu) zero
                0.5 * (j_unitary(T_LIMIT, u, prec)? + j_unitary(-T_LIMIT, u, prec)?)
            } else {
                j_unitary(t, u, prec)?
            }
        }
        SpectralPoint::RealNu { x } => {
            if libm::fabs(x) < T_LIMIT {
                0.5 * (j_real(T_LIMIT, u, prec)? + j_real(-T_LIMIT, u, prec)?)
            } else {
                j_real(x, u, prec)?
            }
        }
    };
    Ok(Complex::new(v, 0.0))
}

fn j_unitary(t: f64, u: f64, prec: &Precision) -> Result<f64, Error> {
    let a = 4.0 * PI * libm::sqrt(libm::fabs(u));
    if u < 0.0 {
        // 4 sqrt(|u|) cosh(pi t) K_{2it}(a), in scaled form so large t
        // survives: cosh(pi t) K_{2it} = (1 + e^{-2 pi|t|})/2 * Ktilde_{2|t|}
        let r_ord = 2.0 * libm::fabs(t);
        let kt = bessel_k_scaled_imag(r_ord, a, prec)?;
        Ok(4.0 * libm::sqrt(-u) * 0.5 * (1.0 + libm::exp(-PI * r_ord)) * kt)
    } else {
        // pi sqrt(u) (J_{-2it} - J_{2it})(a) / (i sinh(pi t))
        let mu = Complex::new(0.0, 2.0 * t);
        let d = bessel_j_complex(-mu, a)? - bessel_j_complex(mu, a)?;
        // d is purely imaginary up to roundoff; the quotient is real
        Ok(PI * libm::sqrt(u) * d.im / libm::sinh(PI * t))
    }
}

fn j_real(x: f64, u: f64, prec: &Precision) -> Result<f64, Error> {
    let a = 4.0 * PI * libm::sqrt(libm::fabs(u));
    if u < 0.0 {
        let k = bessel_k(Complex::new(2.0 * x, 0.0), a, prec)?;
        Ok(4.0 * libm::sqrt(-u) * libm::cos(PI * x) * k.re)
    } else {
        let d = bessel_j_complex(Complex::new(-2.0 * x, 0.0), a)?
            - bessel_j_complex(Complex::new(2.0 * x, 0.0), a)?;
        Ok(PI * libm::sqrt(u) * d.re / libm::sin(PI * x))
    }
}

/// j_nu(u) on u > 0 from the cosine integral representation
///
///   4 sqrt(u) int_0^inf cos(4 pi sqrt(u) cosh xi) cosh(2 nu xi) d xi,
///
/// split at xi = u^{-1/4}: the head is integrated directly, the
/// oscillatory tail once by parts against the cosine factor and the
/// remainder summed over half-periods of the phase.
///
/// Independent of [`j_kernel`] (no Bessel evaluations), which makes the
/// two mutual oracles.
pub fn j_via_integral(nu: SpectralPoint, u: f64, prec: &Precision) -> Result<f64, Error> {
    let nu_c = nu.nu();
    if libm::fabs(nu_c.re) >= 0.5 {
        return Err(Error::OutOfDomain("j_via_integral: |Re nu| >= 1/2"));
    }
    if u <= 0.0 {
        return Err(Error::OutOfDomain("j_via_integral: u <= 0"));
    }
    let a = 4.0 * PI * libm::sqrt(u);
    let xi0 = libm::pow(u, -0.25);
    let inner = prec.guarded();
    // head: smooth, modest phase excursion a (cosh xi0 - 1) ~ 2 pi
    let head = quad::integrate(
        |xi| (Complex::new(a * libm::cosh(xi), 0.0)).cos() * (2.0 * nu_c * xi).cosh(),
        0.0,
        xi0,
        &inner,
    )?;
    // tail, after v = a cosh xi:
    //   int cos(v) psi(v) dv,  psi = cosh(2 nu xi(v)) / sqrt(v^2 - a^2)
    // = [sin(v) psi(v)] - int sin(v) psi'(v) dv  from v0 = a cosh xi0
    let v0 = a * libm::cosh(xi0);
    let psi = |v: f64| -> Complex {
        let xi = libm::acosh(v / a);
        (2.0 * nu_c * xi).cosh() / libm::sqrt(v * v - a * a)
    };
    let dpsi = |v: f64| -> Complex {
        let xi = libm::acosh(v / a);
        let s2 = v * v - a * a;
        2.0 * nu_c * (2.0 * nu_c * xi).sinh() / s2 - v * (2.0 * nu_c * xi).cosh() / libm::pow(s2, 1.5)
    };
    let boundary = -libm::sin(v0) * psi(v0);
    // remaining oscillatory integral: pi-length panels alternate in
    // sign and shrink like v^-2; the partial-sum sequence is summed by
    // iterated pairwise averaging, which collapses the alternating tail
    let rule = quad::Rule::new();
    let mut f = |v: f64| Complex::new(libm::sin(v), 0.0) * dpsi(v);
    let n = 800usize;
    let mut partial: Vec<Complex> = Vec::with_capacity(n);
    let mut acc = Complex::new(0.0, 0.0);
    for k in 0..n {
        let lo = v0 + PI * k as f64;
        let r = quad::integrate_with_rule(&rule, &mut f, lo, lo + PI, &inner)?;
        acc += r.value;
        partial.push(acc);
    }
    for _ in 0..8 {
        for i in 0..partial.len() - 1 {
            partial[i] = 0.5 * (partial[i] + partial[i + 1]);
        }
        partial.pop();
    }
    let rem = partial[partial.len() - 1];
    let total = head.value + boundary - rem;
    Ok(4.0 * libm::sqrt(u) * total.re)
}

/// Closed form of the kernel's Mellin transform over the negative axis,
///
///   int_{-inf}^0 j_nu(u) |u|^{s-1} du
///     = (1/pi) (2 pi)^{-2s} cos(pi nu) Gamma(s+1/2+nu) Gamma(s+1/2-nu),
///
/// valid for Re s > |Re nu| - 1/2.
pub fn mellin_j_negative(nu: SpectralPoint, s: Complex) -> Result<Complex, Error> {
    let nu_c = nu.nu();
    if s.re <= libm::fabs(nu_c.re) - 0.5 {
        return Err(Error::OutOfDomain("mellin (u<0): Re s <= |Re nu| - 1/2"));
    }
    // cos(pi nu) in log form so the unitary line survives large t
    let lcos = log_cos_pi(nu_c);
    let lg = log_gamma(s + 0.5 + nu_c)? + log_gamma(s + 0.5 - nu_c)?;
    Ok((lcos + lg - 2.0 * s * libm::log(2.0 * PI) - Complex::new(libm::log(PI), 0.0)).exp())
}

/// Closed form over the positive axis,
///
///   int_0^inf j_nu(u) u^{s-1} du
///     = -(1/pi) (2 pi)^{-2s} sin(pi s) Gamma(s+1/2+nu) Gamma(s+1/2-nu),
///
/// on the strip |Re nu| - 1/2 < Re s < -1/4.
pub fn mellin_j_positive(nu: SpectralPoint, s: Complex) -> Result<Complex, Error> {
    let nu_c = nu.nu();
    if s.re <= libm::fabs(nu_c.re) - 0.5 || s.re >= -0.25 {
        return Err(Error::OutOfDomain("mellin (u>0): need |Re nu| - 1/2 < Re s < -1/4"));
    }
    let lg = log_gamma(s + 0.5 + nu_c)? + log_gamma(s + 0.5 - nu_c)?;
    Ok(-(PI * s).sin() / PI * (lg - 2.0 * s * libm::log(2.0 * PI)).exp())
}

/// Discrete-point transform,
///
///   int_0^inf j_{ell-1/2}(u) u^{s-1} du
///     = (-1)^ell (2 pi)^{-2s} Gamma(s+ell) / Gamma(ell-s),
///
/// on -ell < Re s < -1/4.
pub fn mellin_j_discrete(ell: u32, s: Complex) -> Result<Complex, Error> {
    if ell == 0 {
        return Err(Error::Invalid("mellin discrete: ell >= 1"));
    }
    let l = ell as f64;
    if s.re <= -l || s.re >= -0.25 {
        return Err(Error::OutOfDomain("mellin discrete: need -ell < Re s < -1/4"));
    }
    let sign = if ell % 2 == 0 { 1.0 } else { -1.0 };
    let lg = log_gamma(s + l)? - log_gamma(Complex::new(l, 0.0) - s)?;
    Ok(sign * (lg - 2.0 * s * libm::log(2.0 * PI)).exp())
}

/// log cos(pi z), branch-safe for |Re z| < 1/2.
fn log_cos_pi(z: Complex) -> Complex {
    // cos(pi z) = (e^{i pi z} + e^{-i pi z})/2; factor out the growing
    // exponential so only a bounded correction goes through log
    let w = Complex::new(0.0, PI) * z;
    if z.im >= 0.0 {
        -w + (Complex::new(1.0, 0.0) + (2.0 * w).exp()).ln() - libm::log(2.0)
    } else {
        w + (Complex::new(1.0, 0.0) + (-2.0 * w).exp()).ln() - libm::log(2.0)
    }
}

/// One chirality of the hypergeometric closed form,
///
///   S(nu; r) = r^{-1/2-nu} Gamma(1/2+nu)^2 / Gamma(1+2nu)
///                * F(1/2+nu, 1/2+nu; 1+2nu; -1/r).
fn s_term(nu_c: Complex, r: f64, prec: &Precision) -> Result<Complex, Error> {
    let half = Complex::new(0.5, 0.0);
    let a = half + nu_c;
    let c = 1.0 + 2.0 * nu_c;
    let lg = 2.0 * log_gamma(a)? - log_gamma(c)?;
    let f = hyp2f1(a, a, c, -1.0 / r, prec)?;
    Ok((lg - (half + nu_c) * libm::log(r)).exp() * f)
}

/// 1/sin(pi nu) for the supported points (never a pole: the unitary
/// line is handled through the two-point limit, discrete points give
/// +-1, real test points have 0 < |x| < 1/2).
fn inv_sin_pi(nu_c: Complex) -> Complex {
    1.0 / (PI * nu_c).sin()
}

/// The weighted-integrand factor of the Lambda transform,
/// Re{ S(nu; r) (1 - 1/sin(pi nu)) }, with the structural zero for odd
/// discrete points taken exactly.
fn lambda_integrand(nu: SpectralPoint, r: f64, prec: &Precision) -> Result<f64, Error> {
    match nu {
        SpectralPoint::Discrete { ell } => {
            if ell % 2 == 1 {
                return Ok(0.0); // 1 - 1/sin(pi(ell - 1/2)) vanishes
            }
            let s = s_term(nu.nu(), r, prec)?;
            Ok(2.0 * s.re)
        }
        SpectralPoint::UnitaryPS { t } if libm::fabs(t) < T_LIMIT => {
            let a = lambda_integrand(SpectralPoint::unitary(T_LIMIT), r, prec)?;
            let b = lambda_integrand(SpectralPoint::unitary(-T_LIMIT), r, prec)?;
            Ok(0.5 * (a + b))
        }
        SpectralPoint::RealNu { x } if libm::fabs(x) < T_LIMIT => {
            let a = lambda_integrand(SpectralPoint::real_nu(T_LIMIT).unwrap(), r, prec)?;
            let b = lambda_integrand(SpectralPoint::real_nu(-T_LIMIT).unwrap(), r, prec)?;
            Ok(0.5 * (a + b))
        }
        _ => {
            let nu_c = nu.nu();
            let s = s_term(nu_c, r, prec)?;
            Ok((s * (Complex::new(1.0, 0.0) - inv_sin_pi(nu_c))).re)
        }
    }
}

/// Xi(r; nu) in closed form: the sum of both chirality terms for the
/// continuous points, the single (u > 0) term for discrete ones.
pub fn xi_closed(r: f64, nu: SpectralPoint, prec: &Precision) -> Result<Complex, Error> {
    if r <= 0.0 {
        return Err(Error::OutOfDomain("xi: r <= 0"));
    }
    match nu {
        SpectralPoint::Discrete { ell } => {
            let sign = if ell % 2 == 0 { 2.0 } else { -2.0 };
            Ok(sign * s_term(nu.nu(), r, prec)?)
        }
        SpectralPoint::UnitaryPS { t } if libm::fabs(t) < T_LIMIT => {
            let a = xi_closed(r, SpectralPoint::unitary(T_LIMIT), prec)?;
            let b = xi_closed(r, SpectralPoint::unitary(-T_LIMIT), prec)?;
            Ok(0.5 * (a + b))
        }
        SpectralPoint::RealNu { x } if libm::fabs(x) < T_LIMIT => {
            let a = xi_closed(r, SpectralPoint::real_nu(T_LIMIT).unwrap(), prec)?;
            let b = xi_closed(r, SpectralPoint::real_nu(-T_LIMIT).unwrap(), prec)?;
            Ok(0.5 * (a + b))
        }
        _ => {
            let nu_c = nu.nu();
            let one = Complex::new(1.0, 0.0);
            let isp = inv_sin_pi(nu_c);
            Ok(s_term(nu_c, r, prec)? * (one - isp) + s_term(-nu_c, r, prec)? * (one + isp))
        }
    }
}

/// Xi(r; nu) by direct quadrature of the defining two-sided integral,
/// used as the independent oracle for [`xi_closed`].
///
/// Split at u = 0 with u = -+ w^2 on each side; the u < 0 side dies
/// through the K-decay of j_nu, the u > 0 side through that of j_0.
pub fn xi_direct(r: f64, nu: SpectralPoint, prec: &Precision) -> Result<Complex, Error> {
    if r <= 0.0 {
        return Err(Error::OutOfDomain("xi: r <= 0"));
    }
    let j0 = SpectralPoint::unitary(0.0);
    let inner = Precision {
        abs_tol: prec.abs_tol.max(1e-9),
        rel_tol: prec.rel_tol.max(1e-8),
        ..*prec
    };
    let tol = inner.abs_tol;
    // u > 0 side: j_0(-u) = 4 sqrt(u) K_0(4 pi sqrt(u)) cuts the tail
    let w_pos = (libm::log(10.0 / tol) / (4.0 * PI) + 1.0) * libm::sqrt(r).max(1.0);
    let discrete = matches!(nu, SpectralPoint::Discrete { .. });
    let pos = integrate_oscillatory_half(
        &mut |w: f64| -> Result<Complex, Error> {
            let u = w * w;
            Ok(j_kernel(j0, -u, &inner)? * j_kernel(nu, u / r, &inner)? * (2.0 / (w * w)))
        },
        w_pos,
        &inner,
    )?;
    // u < 0 side: zero for discrete points, K-decay of j_nu otherwise
    let neg = if discrete {
        Complex::new(0.0, 0.0)
    } else {
        let w_neg = libm::sqrt(r) * (libm::log(10.0 / tol) / (4.0 * PI)) + 1.5;
        integrate_oscillatory_half(
            &mut |w: f64| -> Result<Complex, Error> {
                let u = w * w;
                Ok(j_kernel(j0, u, &inner)? * j_kernel(nu, -u / r, &inner)? * (2.0 / (w * w)))
            },
            w_neg,
            &inner,
        )?
    };
    Ok(pos + neg)
}

/// Integrate f over (0, w_max] with panels short enough for the
/// sin(4 pi w)-scale oscillation of j_0; the w -> 0 end carries only a
/// logarithmic singularity, handled by the adaptive bisection.
fn integrate_oscillatory_half(
    f: &mut dyn FnMut(f64) -> Result<Complex, Error>,
    w_max: f64,
    prec: &Precision,
) -> Result<Complex, Error> {
    let n = ((w_max / 0.2) as usize).max(4);
    let mut edges = quad::linspace_edges(1e-8, w_max, n);
    edges.insert(0, 1e-12);
    let mut failure: Option<Error> = None;
    let r = quad::integrate_panels(
        |w| match f(w) {
            Ok(v) => v,
            Err(e) => {
                failure = Some(e);
                Complex::new(0.0, 0.0)
            }
        },
        &edges,
        prec,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    Ok(r.value)
}

/// A transform value with its propagated error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TransformValue {
    pub value: f64,
    pub err: f64,
}

/// Lambda(nu; g): the g_c-weighted r-integral of the hypergeometric
/// kernel factor,
///
///   int_0^inf g_c((1/2pi) log(1+1/r)) / sqrt(r(r+1))
///       * Re{ r^{-1/2-nu} (1 - 1/sin(pi nu))
///             Gamma(1/2+nu)^2/Gamma(1+2nu) F(1/2+nu,1/2+nu;1+2nu;-1/r) } dr.
///
/// Computed in log coordinates r = e^x where the measure becomes
/// dx / sqrt(1 + e^{-x}) and the unitary-line oscillation is the pure
/// frequency kappa; panel width is kept below pi/(4(kappa+1)).
///
/// Odd discrete points return exactly zero (the 1 - 1/sin factor).
pub fn lambda_transform(
    nu: SpectralPoint,
    g: &WeightFunction,
    prec: &Precision,
) -> Result<TransformValue, Error> {
    if let SpectralPoint::Discrete { ell } = nu {
        if ell % 2 == 1 {
            return Ok(TransformValue { value: 0.0, err: 0.0 });
        }
    }
    weighted_r_integral(nu, g, prec, &mut |p, r, pr| lambda_integrand(p, r, pr))
}

/// Theta(nu; g): same weighted r-integral but against the full
/// two-sided Xi in closed form. Equals 2 Lambda on the unitary line and
/// Lambda at even discrete points; kept as an independent evaluation so
/// those identities are testable.
pub fn theta_transform(
    nu: SpectralPoint,
    g: &WeightFunction,
    prec: &Precision,
) -> Result<TransformValue, Error> {
    weighted_r_integral(nu, g, prec, &mut |p, r, pr| xi_closed(r, p, pr).map(|v| v.re))
}

fn weighted_r_integral(
    nu: SpectralPoint,
    g: &WeightFunction,
    prec: &Precision,
    integrand: &mut dyn FnMut(SpectralPoint, f64, &Precision) -> Result<f64, Error>,
) -> Result<TransformValue, Error> {
    let kappa = libm::fabs(nu.nu().im);
    let floor = (prec.abs_tol * 1e-2).clamp(1e-18, 1e-11);
    // r -> 0: the weight argument grows like -x/(2 pi) and ĝ cuts it off
    let x_lo = -(2.0 * PI * g.hat_support(floor) + 2.0);
    // r -> inf: amplitude e^{-x/2} ĝ(0)
    let g0 = g.hat_g(Complex::new(0.0, 0.0)).norm().max(1.0);
    let x_hi = 2.0 * libm::log(g0 / floor);
    let width = (PI / (4.0 * (kappa + 1.0))).min(0.5);
    let n = ((x_hi - x_lo) / width) as usize + 1;
    let edges = quad::linspace_edges(x_lo, x_hi, n);
    let inner = prec.guarded();
    let mut failure: Option<Error> = None;
    let r = quad::integrate_panels(
        |x| {
            let emx = libm::exp(-x);
            let rr = libm::exp(x);
            let arg = libm::log1p(emx) / (2.0 * PI);
            let gc = g.g_cosine(Complex::new(arg, 0.0)).re;
            if libm::fabs(gc) < 1e-300 {
                return Complex::new(0.0, 0.0);
            }
            match integrand(nu, rr, &inner) {
                Ok(v) => Complex::new(gc * v / libm::sqrt(1.0 + emx), 0.0),
                Err(e) => {
                    failure = Some(e);
                    Complex::new(0.0, 0.0)
                }
            }
        },
        &edges,
        prec,
    )?;
    if let Some(e) = failure {
        return Err(e);
    }
    // hypergeometric cancellation near r ~ 1 grows like e^{0.47 kappa};
    // folded into the reported error rather than silently dropped
    let cancel = 1e-16 * libm::exp((0.47 * kappa).min(33.0));
    Ok(TransformValue {
        value: r.value.re,
        err: r.err + cancel,
    })
}

/// Cache of Lambda values keyed by spectral point, weight, and
/// tolerance identity; reads are concurrent once filled, writes go
/// through `&mut self` (callers serialize them by construction).
#[derive(Debug, Default)]
pub struct TransformCache {
    map: BTreeMap<(u64, u64, u64), TransformValue>,
}

fn prec_key(prec: &Precision) -> u64 {
    prec.abs_tol.to_bits() ^ prec.rel_tol.to_bits().rotate_left(17)
        ^ (prec.max_terms as u64).rotate_left(43)
}

impl TransformCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, nu: SpectralPoint, g: &WeightFunction, prec: &Precision) -> Option<TransformValue> {
        self.map.get(&(nu.key(), g.cache_key(), prec_key(prec))).copied()
    }

    /// Lambda value through the cache.
    pub fn lambda(
        &mut self,
        nu: SpectralPoint,
        g: &WeightFunction,
        prec: &Precision,
    ) -> Result<TransformValue, Error> {
        let key = (nu.key(), g.cache_key(), prec_key(prec));
        if let Some(v) = self.map.get(&key) {
            return Ok(*v);
        }
        let v = lambda_transform(nu, g, prec)?;
        self.map.insert(key, v);
        Ok(v)
    }

    /// Precompute Lambda on a list of points (used by the assembly to
    /// amortize the transform cost across moment evaluations).
    pub fn warm(
        &mut self,
        points: &[SpectralPoint],
        g: &WeightFunction,
        prec: &Precision,
    ) -> Result<(), Error> {
        for &p in points {
            self.lambda(p, g, prec)?;
        }
        Ok(())
    }
}

/// Collect the Lambda values for a set of points, returning them in
/// input order. Pure helper for data-parallel callers: each value is
/// independent, so callers may shard `points` and merge the results.
pub fn lambda_many(
    points: &[SpectralPoint],
    g: &WeightFunction,
    prec: &Precision,
) -> Result<Vec<TransformValue>, Error> {
    points.iter().map(|&p| lambda_transform(p, g, prec)).collect()
}
