//! Panel-based Gauss–Legendre quadrature with adaptive bisection.
//!
//! The integrators work on complex-valued integrands over finite
//! intervals; callers handle their own variable changes for endpoint
//! singularities and infinite tails. Error estimation compares an
//! n-point rule against the 2n-point rule on the same panel.

use crate::{Complex, Error, Precision};
use alloc::vec::Vec;

/// Gauss–Legendre nodes/weights on [-1, 1], by Newton iteration on P_n.
fn gauss_legendre<const N: usize>() -> ([f64; N], [f64; N]) {
    let mut x = [0.0; N];
    let mut w = [0.0; N];
    let n = N;
    for i in 0..n {
        // Tricomi-style initial guess.
        let mut t = libm::cos(core::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5));
        for _ in 0..100 {
            // Legendre recurrence for P_n(t) and P'_n(t).
            let (mut p0, mut p1) = (1.0, t);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * t * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let dp = n as f64 * (t * p1 - p0) / (t * t - 1.0);
            let dt = p1 / dp;
            t -= dt;
            if libm::fabs(dt) < 1e-15 {
                break;
            }
        }
        let (mut p0, mut p1) = (1.0, t);
        for k in 2..=n {
            let kf = k as f64;
            let p2 = ((2.0 * kf - 1.0) * t * p1 - (kf - 1.0) * p0) / kf;
            p0 = p1;
            p1 = p2;
        }
        let dp = n as f64 * (t * p1 - p0) / (t * t - 1.0);
        x[i] = t;
        w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
    }
    (x, w)
}

/// Cached rule pair used by all panels of one integration call.
pub struct Rule {
    x16: [f64; 16],
    w16: [f64; 16],
    x32: [f64; 32],
    w32: [f64; 32],
}

impl Rule {
    pub fn new() -> Self {
        let (x16, w16) = gauss_legendre::<16>();
        let (x32, w32) = gauss_legendre::<32>();
        Rule { x16, w16, x32, w32 }
    }

    /// One non-adaptive application of the embedded 16/32 pair:
    /// (value, error estimate, magnitude sample).
    pub(crate) fn panel<F: FnMut(f64) -> Complex>(
        &self,
        f: &mut F,
        a: f64,
        b: f64,
    ) -> (Complex, f64, f64) {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut s16 = Complex::new(0.0, 0.0);
        for i in 0..16 {
            s16 += f(c + h * self.x16[i]) * self.w16[i];
        }
        let mut s32 = Complex::new(0.0, 0.0);
        let mut abssum = 0.0;
        for i in 0..32 {
            let v = f(c + h * self.x32[i]);
            s32 += v * self.w32[i];
            abssum += v.norm() * self.w32[i];
        }
        ((s32 * h), (s32 - s16).norm() * h.abs(), abssum * h.abs())
    }
}

impl Default for Rule {
    fn default() -> Self {
        Rule::new()
    }
}

/// Outcome of an adaptive integration: value and certified error estimate.
#[derive(Debug, Clone, Copy)]
pub struct Integral {
    pub value: Complex,
    pub err: f64,
}

/// Adaptively integrate `f` over `[a, b]`.
///
/// Panels are bisected until the per-panel estimate passes the mixed
/// absolute/relative test against the running magnitude of the result.
pub fn integrate<F: FnMut(f64) -> Complex>(
    mut f: F,
    a: f64,
    b: f64,
    prec: &Precision,
) -> Result<Integral, Error> {
    integrate_with_rule(&Rule::new(), &mut f, a, b, prec)
}

pub fn integrate_with_rule<F: FnMut(f64) -> Complex>(
    rule: &Rule,
    f: &mut F,
    a: f64,
    b: f64,
    prec: &Precision,
) -> Result<Integral, Error> {
    // (a, b, value, err) panels kept on an explicit stack.
    let mut stack: Vec<(f64, f64, Complex, f64)> = Vec::new();
    let mut done: Vec<(Complex, f64)> = Vec::new();
    let (v, e, _) = rule.panel(f, a, b);
    stack.push((a, b, v, e));
    let mut splits: u32 = 0;
    while let Some((pa, pb, pv, pe)) = stack.pop() {
        // Budget the panel tolerance by its share of the interval.
        let share = (pb - pa).abs() / (b - a).abs();
        let total_mag: f64 = done
            .iter()
            .map(|(v, _)| v.norm())
            .sum::<f64>()
            .max(pv.norm());
        let tol = (prec.abs_tol + prec.rel_tol * total_mag) * share.max(1e-6);
        if pe <= tol || (pb - pa).abs() < 1e-14 * (b - a).abs() {
            done.push((pv, pe));
            continue;
        }
        splits += 1;
        if splits > prec.max_terms {
            return Err(Error::PrecisionExhausted {
                achieved: pe,
                requested: tol,
            });
        }
        let mid = 0.5 * (pa + pb);
        let (v1, e1, _) = rule.panel(f, pa, mid);
        let (v2, e2, _) = rule.panel(f, mid, pb);
        stack.push((pa, mid, v1, e1));
        stack.push((mid, pb, v2, e2));
    }
    let mut value = Complex::new(0.0, 0.0);
    let mut err = 0.0;
    for (v, e) in done {
        value += v;
        err += e;
    }
    Ok(Integral { value, err })
}

/// Integrate with a caller-supplied initial partition (panel edges).
///
/// Used when the integrand has known structure (oscillation scale,
/// kinks) that the bisection heuristic should not have to discover.
pub fn integrate_panels<F: FnMut(f64) -> Complex>(
    mut f: F,
    edges: &[f64],
    prec: &Precision,
) -> Result<Integral, Error> {
    let rule = Rule::new();
    let mut value = Complex::new(0.0, 0.0);
    let mut err = 0.0;
    for win in edges.windows(2) {
        let r = integrate_with_rule(&rule, &mut f, win[0], win[1], prec)?;
        value += r.value;
        err += r.err;
    }
    Ok(Integral { value, err })
}

/// Uniformly spaced panel edges, at least `n` panels.
pub fn linspace_edges(a: f64, b: f64, n: usize) -> Vec<f64> {
    let n = n.max(1);
    (0..=n)
        .map(|i| a + (b - a) * i as f64 / n as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn re(x: f64) -> Complex {
        Complex::new(x, 0.0)
    }

    #[test]
    fn polynomial_exact() {
        let p = Precision::default();
        let r = integrate(|x| re(x * x * x - 2.0 * x + 1.0), -1.0, 3.0, &p).unwrap();
        // antiderivative x^4/4 - x^2 + x
        let exact = (81.0 / 4.0 - 9.0 + 3.0) - (0.25 - 1.0 - 1.0);
        assert!((r.value.re - exact).abs() < 1e-12);
    }

    #[test]
    fn oscillatory() {
        let p = Precision::with_tols(1e-12, 1e-12);
        let r = integrate(|x| re(libm::cos(50.0 * x)), 0.0, 1.0, &p).unwrap();
        let exact = libm::sin(50.0) / 50.0;
        assert!((r.value.re - exact).abs() < 1e-11, "err={}", r.err);
    }

    #[test]
    fn gaussian_full_line_window() {
        let p = Precision::default();
        let r = integrate(|x| re(libm::exp(-x * x)), -10.0, 10.0, &p).unwrap();
        assert!((r.value.re - libm::sqrt(core::f64::consts::PI)).abs() < 1e-12);
    }

    #[test]
    fn budget_exhaustion_reported() {
        let p = Precision {
            abs_tol: 1e-300,
            rel_tol: 1e-16,
            max_terms: 3,
            working_guard_digits: 0,
        };
        let r = integrate(|x| re(libm::cos(500.0 * x * x)), 0.0, 3.0, &p);
        assert!(matches!(r, Err(Error::PrecisionExhausted { .. })));
    }
}
