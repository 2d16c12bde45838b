//! Admissible weight functions with closed-form Fourier transforms.
//!
//! Only families whose transform is known in closed form are allowed;
//! the moment formulas need ĝ on and off the real axis and g at
//! complex points like i/2, so a numerically transformed family would
//! poison every downstream tolerance.

use crate::{Complex, Error};
use alloc::vec::Vec;
use core::f64::consts::PI;

const SQRT_PI: f64 = 1.7724538509055160273;

/// Weight family; `GaussianPair` is the workhorse
/// g(t) = e^{-((t-T)/G)^2} + e^{-((t+T)/G)^2}.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum WeightFamily {
    /// Two Gaussians centred at +-T, width G; even by construction.
    GaussianPair { center: f64, width: f64 },
    /// Single centred Gaussian e^{-(t/G)^2}.
    ScaledGaussian { width: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WeightFunction {
    pub family: WeightFamily,
    pub amplitude: f64,
}

impl WeightFunction {
    pub fn gaussian_pair(center: f64, width: f64) -> Result<Self, Error> {
        if !(center >= 0.0) || !(width > 0.0) {
            return Err(Error::Invalid("gaussian pair needs T >= 0, G > 0"));
        }
        Ok(WeightFunction {
            family: WeightFamily::GaussianPair { center, width },
            amplitude: 1.0,
        })
    }

    pub fn scaled_gaussian(width: f64) -> Result<Self, Error> {
        if !(width > 0.0) {
            return Err(Error::Invalid("scaled gaussian needs G > 0"));
        }
        Ok(WeightFunction {
            family: WeightFamily::ScaledGaussian { width },
            amplitude: 1.0,
        })
    }

    pub fn with_amplitude(mut self, amplitude: f64) -> Self {
        self.amplitude = amplitude;
        self
    }

    /// g at a complex point (entire function).
    pub fn eval_g(&self, t: Complex) -> Complex {
        self.amplitude
            * match self.family {
                WeightFamily::GaussianPair { center, width } => {
                    let a = (t - center) / width;
                    let b = (t + center) / width;
                    (-a * a).exp() + (-b * b).exp()
                }
                WeightFamily::ScaledGaussian { width } => {
                    let a = t / width;
                    (-a * a).exp()
                }
            }
    }

    /// g' at a complex point.
    pub fn eval_g_deriv(&self, t: Complex) -> Complex {
        self.amplitude
            * match self.family {
                WeightFamily::GaussianPair { center, width } => {
                    let a = (t - center) / width;
                    let b = (t + center) / width;
                    (-2.0 * a * (-a * a).exp() - 2.0 * b * (-b * b).exp()) / width
                }
                WeightFamily::ScaledGaussian { width } => {
                    let a = t / width;
                    -2.0 * a * (-a * a).exp() / width
                }
            }
    }

    /// Fourier transform ĝ(x) = int g(t) e^{-2 pi i x t} dt, closed form,
    /// valid at complex x.
    pub fn hat_g(&self, x: Complex) -> Complex {
        self.amplitude
            * match self.family {
                WeightFamily::GaussianPair { center, width } => {
                    let e = (-(PI * width * x) * (PI * width * x)).exp();
                    2.0 * SQRT_PI * width * e * (2.0 * PI * center * x).cos()
                }
                WeightFamily::ScaledGaussian { width } => {
                    let e = (-(PI * width * x) * (PI * width * x)).exp();
                    SQRT_PI * width * e
                }
            }
    }

    /// Even (cosine) part of the transform, (ĝ(x) + ĝ(-x)) / 2.
    ///
    /// Both families are even so this coincides with ĝ; it is kept as the
    /// literal average so the identity holds by construction.
    pub fn g_cosine(&self, x: Complex) -> Complex {
        0.5 * (self.hat_g(x) + self.hat_g(-x))
    }

    /// Scale beyond which ĝ on the real axis is below `floor` (absolute).
    pub fn hat_support(&self, floor: f64) -> f64 {
        let width = match self.family {
            WeightFamily::GaussianPair { width, .. } => width,
            WeightFamily::ScaledGaussian { width } => width,
        };
        let amp = self.amplitude.abs().max(1e-300) * 2.0 * SQRT_PI * width;
        let l = libm::log(amp / floor).max(1.0);
        libm::sqrt(l) / (PI * width)
    }

    /// Scale beyond which g on the real axis is below `floor`.
    pub fn support(&self, floor: f64) -> f64 {
        let (center, width) = match self.family {
            WeightFamily::GaussianPair { center, width } => (center, width),
            WeightFamily::ScaledGaussian { width } => (0.0, width),
        };
        let amp = self.amplitude.abs().max(1e-300);
        let l = libm::log(amp / floor).max(1.0);
        center + width * libm::sqrt(l)
    }

    /// Deterministic cache key from the exact parameter bits.
    pub fn cache_key(&self) -> u64 {
        let mut h = 0xcbf29ce484222325u64;
        let mut mix = |v: u64| {
            h ^= v;
            h = h.wrapping_mul(0x100000001b3);
        };
        match self.family {
            WeightFamily::GaussianPair { center, width } => {
                mix(1);
                mix(center.to_bits());
                mix(width.to_bits());
            }
            WeightFamily::ScaledGaussian { width } => {
                mix(2);
                mix(width.to_bits());
            }
        }
        mix(self.amplitude.to_bits());
        h
    }

    pub fn admissibility_report(&self) -> AdmissibilityReport {
        admissibility_of(|t| self.eval_g(t), self.support(1e-30).max(5.0))
    }
}

/// Result of the admissibility probes for a candidate weight.
#[derive(Debug, Clone)]
pub struct AdmissibilityReport {
    pub even: bool,
    pub real_on_axis: bool,
    pub strip_decay: bool,
    /// (probe point, observed magnitude) for the failed checks.
    pub witnesses: Vec<(Complex, f64)>,
}

impl AdmissibilityReport {
    pub fn admissible(&self) -> bool {
        self.even && self.real_on_axis && self.strip_decay
    }
}

/// Probe an arbitrary candidate g for evenness, realness on the axis and
/// decay in the strip |Im t| <= 1.
pub fn admissibility_of<F: Fn(Complex) -> Complex>(g: F, scale: f64) -> AdmissibilityReport {
    let mut witnesses = Vec::new();
    let mut even = true;
    let mut real_on_axis = true;
    let probes = [0.37, 1.1, 2.9, 0.61 * scale, 0.93 * scale];
    for &t in &probes {
        let z = Complex::new(t, 0.0);
        let d = (g(z) - g(-z)).norm();
        let m = g(z).norm().max(1.0);
        if d > 1e-10 * m {
            even = false;
            witnesses.push((z, d));
        }
        if libm::fabs(g(z).im) > 1e-10 * m {
            real_on_axis = false;
            witnesses.push((z, g(z).im));
        }
    }
    // decay: in-strip magnitude far out must collapse relative to peak
    let peak = probes
        .iter()
        .map(|&t| g(Complex::new(t, 0.0)).norm())
        .fold(0.0f64, f64::max)
        .max(g(Complex::new(0.0, 0.0)).norm());
    let mut strip_decay = true;
    for &im in &[0.0, 0.5, 1.0] {
        let far = g(Complex::new(4.0 * scale + 30.0, im)).norm();
        if !(far <= 1e-8 * peak.max(1e-300)) {
            strip_decay = false;
            witnesses.push((Complex::new(4.0 * scale + 30.0, im), far));
        }
    }
    AdmissibilityReport {
        even,
        real_on_axis,
        strip_decay,
        witnesses,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{quad, Precision};

    #[test]
    fn transform_closed_form_matches_quadrature() {
        // hat_g against direct int g(t) e^{-2 pi i x t} dt, 1e-8.
        let w = WeightFunction::gaussian_pair(4.0, 1.5).unwrap().with_amplitude(0.7);
        let p = Precision::with_tols(1e-12, 1e-12);
        for &x in &[0.0, 0.13, 0.45, -0.3] {
            let direct = quad::integrate(
                |t| {
                    w.eval_g(Complex::new(t, 0.0))
                        * (Complex::new(0.0, -2.0 * PI * x * t)).exp()
                },
                -20.0,
                20.0,
                &p,
            )
            .unwrap()
            .value;
            let closed = w.hat_g(Complex::new(x, 0.0));
            assert!((direct - closed).norm() < 1e-10, "x={x}");
        }
    }

    #[test]
    fn inversion_round_trip() {
        let w = WeightFunction::gaussian_pair(2.0, 1.0).unwrap();
        let p = Precision::with_tols(1e-12, 1e-12);
        let cut = w.hat_support(1e-16);
        for &t in &[0.0, 1.0, 2.5] {
            let back = quad::integrate(
                |x| {
                    w.hat_g(Complex::new(x, 0.0)) * (Complex::new(0.0, 2.0 * PI * x * t)).exp()
                },
                -cut,
                cut,
                &p,
            )
            .unwrap()
            .value;
            assert!((back - w.eval_g(Complex::new(t, 0.0))).norm() < 1e-8, "t={t}");
        }
    }

    #[test]
    fn parseval() {
        let w = WeightFunction::gaussian_pair(3.0, 2.0).unwrap();
        let p = Precision::with_tols(1e-13, 1e-12);
        let lhs = quad::integrate(
            |t| {
                let v = w.eval_g(Complex::new(t, 0.0));
                v * v
            },
            -30.0,
            30.0,
            &p,
        )
        .unwrap()
        .value;
        let cut = w.hat_support(1e-18);
        let rhs = quad::integrate(
            |x| {
                let v = w.hat_g(Complex::new(x, 0.0));
                v * v
            },
            -cut,
            cut,
            &p,
        )
        .unwrap()
        .value;
        assert!((lhs - rhs).norm() < 1e-8, "{lhs} vs {rhs}");
    }

    #[test]
    fn cosine_part_is_exact_average() {
        let w = WeightFunction::gaussian_pair(5.0, 1.0).unwrap();
        let x = Complex::new(0.21, -0.04);
        let avg = 0.5 * (w.hat_g(x) + w.hat_g(-x));
        assert_eq!(w.g_cosine(x), avg);
    }

    #[test]
    fn scaled_gaussian_unit_width() {
        // G = 1: hat g(x) = sqrt(pi) e^{-pi^2 x^2}
        let w = WeightFunction::scaled_gaussian(1.0).unwrap();
        let x = 0.2;
        let expect = SQRT_PI * libm::exp(-PI * PI * x * x);
        assert!((w.hat_g(Complex::new(x, 0.0)).re - expect).abs() < 1e-14);
    }

    #[test]
    fn admissibility_pass_and_fail() {
        let w = WeightFunction::gaussian_pair(10.0, 2.0).unwrap();
        assert!(w.admissibility_report().admissible());
        // constant pseudo-weight: no decay
        let r = admissibility_of(|_| Complex::new(1.0, 0.0), 5.0);
        assert!(!r.admissible());
        assert!(!r.strip_decay);
        assert!(!r.witnesses.is_empty());
        // odd pseudo-weight
        let r = admissibility_of(|t| t * (-t * t).exp(), 5.0);
        assert!(!r.even);
    }

    #[test]
    fn invalid_parameters_rejected() {
        assert!(WeightFunction::gaussian_pair(-1.0, 2.0).is_err());
        assert!(WeightFunction::gaussian_pair(3.0, 0.0).is_err());
        assert!(WeightFunction::scaled_gaussian(-2.0).is_err());
    }
}
