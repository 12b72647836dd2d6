//! Numerical inversion of Laplace transforms.
//!
//! [`euler`] is the Abate–Whitt Euler-summation scheme on the Bromwich
//! integral and needs the transform at complex arguments. [`stehfest`] is the
//! Gaver–Stehfest scheme on real arguments only; it loses about one digit per
//! two terms to cancellation in f64, so it is a fallback for transforms that
//! cannot be continued into the complex plane.

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

/// Number of Euler terms used by default (2M + 1 transform evaluations).
pub const EULER_TERMS: usize = 15;
/// Stehfest order used by default.
pub const STEHFEST_TERMS: usize = 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InversionMethod {
    Euler,
    Stehfest,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Inversion {
    pub value: f64,
    /// |difference| between the default order and a lower order.
    pub precision: f64,
    pub method: InversionMethod,
}

impl Inversion {
    /// Precision estimate exceeds `tol`.
    pub fn unstable(&self, tol: f64) -> bool {
        !(self.precision <= tol) || !self.value.is_finite()
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    let mut b = 1.0;
    for i in 0..k {
        b = b * (n - i) as f64 / (i + 1) as f64;
    }
    b
}

/// f(t) from its transform f̂ by Euler summation with `m` terms.
pub fn euler<F: Fn(Complex64) -> Complex64>(fhat: F, t: f64, m: usize) -> f64 {
    let a = m as f64 * core::f64::consts::LN_10 / 3.0;
    let two_m = 2 * m;
    let mut xi = [0.0f64; 64];
    xi[0] = 0.5;
    for x in xi.iter_mut().take(m + 1).skip(1) {
        *x = 1.0;
    }
    let pow = 2f64.powi(-(m as i32));
    xi[two_m] = pow;
    for k in 1..m {
        xi[two_m - k] = xi[two_m - k + 1] + pow * binomial(m, k);
    }
    let mut sum = 0.0;
    for (k, w) in xi.iter().enumerate().take(two_m + 1) {
        let beta = Complex64::new(a, core::f64::consts::PI * k as f64);
        let term = fhat(beta / t).re * w;
        if k % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    10f64.powf(m as f64 / 3.0) / t * sum
}

pub fn euler_with_estimate<F: Fn(Complex64) -> Complex64>(fhat: F, t: f64) -> Inversion {
    let value = euler(&fhat, t, EULER_TERMS);
    let coarse = euler(&fhat, t, EULER_TERMS - 2);
    Inversion {
        value,
        precision: (value - coarse).abs(),
        method: InversionMethod::Euler,
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).fold(1.0, |acc, i| acc * i as f64)
}

fn stehfest_weights(n: usize) -> [f64; 32] {
    let half = n / 2;
    let mut v = [0.0; 32];
    for k in 1..=n {
        let mut s = 0.0;
        for j in (k + 1) / 2..=k.min(half) {
            s += (j as f64).powi(half as i32) * factorial(2 * j)
                / (factorial(half - j)
                    * factorial(j)
                    * factorial(j - 1)
                    * factorial(k - j)
                    * factorial(2 * j - k));
        }
        v[k - 1] = if (k + half) % 2 == 0 { s } else { -s };
    }
    v
}

/// f(t) by the Gaver–Stehfest formula of even order `n` (n ≤ 30).
pub fn stehfest<F: Fn(f64) -> f64>(fhat: F, t: f64, n: usize) -> f64 {
    assert!(n % 2 == 0 && n <= 30, "Stehfest order must be even and at most 30");
    let v = stehfest_weights(n);
    let a = core::f64::consts::LN_2 / t;
    a * (1..=n).map(|k| v[k - 1] * fhat(k as f64 * a)).sum::<f64>()
}

pub fn stehfest_with_estimate<F: Fn(f64) -> f64>(fhat: F, t: f64) -> Inversion {
    let value = stehfest(&fhat, t, STEHFEST_TERMS);
    let coarse = stehfest(&fhat, t, STEHFEST_TERMS - 2);
    Inversion {
        value,
        precision: (value - coarse).abs(),
        method: InversionMethod::Stehfest,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_inverts_exponential_cdf() {
        // F̂(s) = 1 / (s (1 + s))  ↔  F(t) = 1 - e^{-t}
        for &t in &[0.05, 0.5, 1.0, 4.0, 20.0] {
            let r = euler_with_estimate(|s| 1.0 / (s * (1.0 + s)), t);
            assert!((r.value - (1.0 - (-t).exp())).abs() < 1e-9, "t={t}");
            assert!(!r.unstable(1e-6));
        }
    }

    #[test]
    fn stehfest_inverts_smooth_transform_roughly() {
        let r = stehfest_with_estimate(|s| 1.0 / (s * (1.0 + s)), 1.0);
        assert!((r.value - 0.632_120_558_828_557_7).abs() < 1e-4);
    }

    #[test]
    fn stehfest_weights_sum_to_zero() {
        let v = stehfest_weights(12);
        let s: f64 = v.iter().sum();
        assert!(s.abs() < 1e-6 * v.iter().map(|x| x.abs()).sum::<f64>());
    }
}
