//! Divisor sums with complex exponent.

use crate::Complex;
use alloc::vec::Vec;

/// Prime factorization by trial division; plenty for desk-scale indices.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Number of divisors d(n).
pub fn divisor_count(n: u64) -> u64 {
    factorize(n).iter().map(|&(_, e)| (e + 1) as u64).product()
}

/// sigma_a(n) = sum_{d | n} d^a for complex exponent a.
pub fn divisor_sigma_c(a: Complex, n: u64) -> Complex {
    let mut acc = Complex::new(1.0, 0.0);
    for (p, e) in factorize(n) {
        // geometric block sum_{j=0}^{e} p^{a j}
        let pa = (a * libm::log(p as f64)).exp();
        let mut block = Complex::new(1.0, 0.0);
        let mut pw = Complex::new(1.0, 0.0);
        for _ in 0..e {
            pw *= pa;
            block += pw;
        }
        acc *= block;
    }
    acc
}

/// sigma_a(n) with real exponent.
pub fn divisor_sigma(a: f64, n: u64) -> f64 {
    divisor_sigma_c(Complex::new(a, 0.0), n).re
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(divisor_count(1), 1);
        assert_eq!(divisor_count(12), 6);
        assert_eq!(divisor_count(97), 2);
        assert!((divisor_sigma(1.0, 12) - 28.0).abs() < 1e-12);
        assert!((divisor_sigma(0.0, 60) - 12.0).abs() < 1e-12);
        assert!((divisor_sigma(2.0, 10) - (1.0 + 4.0 + 25.0 + 100.0)).abs() < 1e-10);
    }

    #[test]
    fn multiplicativity() {
        // gcd(8, 15) = 1
        let a = Complex::new(0.3, -1.1);
        let lhs = divisor_sigma_c(a, 8 * 15);
        let rhs = divisor_sigma_c(a, 8) * divisor_sigma_c(a, 15);
        assert!((lhs - rhs).norm() < 1e-12 * rhs.norm());
    }

    #[test]
    fn complex_exponent_against_direct_sum() {
        let a = Complex::new(-0.5, 2.0);
        let n = 36u64;
        let mut direct = Complex::new(0.0, 0.0);
        for d in 1..=n {
            if n % d == 0 {
                direct += (a * libm::log(d as f64)).exp();
            }
        }
        let fast = divisor_sigma_c(a, n);
        assert!((fast - direct).norm() < 1e-13 * direct.norm());
    }
}
