//! Positive strictly stable laws with Laplace transform e^{-s^ρ}, 0 < ρ < 1.
//!
//! Sampling follows Kanter's representation S = (A(U) / E)^{(1-ρ)/ρ} with U
//! uniform on (0, π) and E standard exponential. The same representation
//! gives the distribution function as a finite integral over U.

use alloc::vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;
use rand::Rng;
use rand_distr::{Distribution, Exp1, Open01};

use crate::error::Result;
use crate::quad::{integrate_breaks, Tolerance};

/// ln A(θ) = [ρ ln sin ρθ + (1-ρ) ln sin (1-ρ)θ - ln sin θ] / (1-ρ).
fn ln_kanter(rho: f64, theta: f64) -> f64 {
    let a = rho * (rho * theta).sin().ln();
    let b = (1.0 - rho) * ((1.0 - rho) * theta).sin().ln();
    (a + b - theta.sin().ln()) / (1.0 - rho)
}

/// ln A(π − φ). The integrals are taken in φ: their features sit at
/// θ ≈ π, far below the spacing of doubles near π for ρ close to 1.
fn ln_kanter_reflected(rho: f64, phi: f64) -> f64 {
    let theta = PI - phi;
    let a = rho * (rho * theta).sin().ln();
    let b = (1.0 - rho) * ((1.0 - rho) * theta).sin().ln();
    (a + b - phi.sin().ln()) / (1.0 - rho)
}

pub(crate) fn sample<R: Rng + ?Sized>(rho: f64, rng: &mut R) -> f64 {
    let u: f64 = Open01.sample(rng);
    let e: f64 = Exp1.sample(rng);
    let theta = PI * u;
    ((ln_kanter(rho, theta) - e.ln()) * (1.0 - rho) / rho).exp()
}

const TOL: Tolerance = Tolerance::new(1e-300, 1e-12);

/// Levels of ln A(θ) + lx bracketing the transition of the integrands.
/// Below e^{-60} the integrands are negligible; above e^{4} saturated.
const LEVELS: [f64; 10] = [-60.0, -45.0, -32.0, -22.0, -14.0, -8.0, -4.0, -1.5, 1.0, 4.0];

/// (1/π) ∫_0^π g(ln A(θ) + lx) dθ, split where the argument of `g` crosses
/// [`LEVELS`]. For large or small x the integrand changes only on a sliver
/// of the range that an unsplit adaptive rule can miss entirely.
fn over_theta(rho: f64, lx: f64, g: impl Fn(f64) -> f64) -> Result<f64> {
    let y = |phi: f64| ln_kanter_reflected(rho, phi) + lx;
    let mut points = vec![0.0];
    for level in LEVELS.iter().rev() {
        // y is decreasing in φ
        let (mut lo, mut hi) = (0.0, PI);
        // breakpoints only need to land near the crossing
        while hi - lo > 1e-6 * hi && hi > f64::MIN_POSITIVE {
            let mid = 0.5 * (lo + hi);
            if y(mid) > *level {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let t = 0.5 * (lo + hi);
        if t > points[points.len() - 1] && t < PI {
            points.push(t);
        }
    }
    points.push(PI);
    let r = integrate_breaks(|phi| g(y(phi)), &points, &TOL);
    Ok(r.into_result("stable law integral")? / PI)
}

pub(crate) fn cdf(rho: f64, x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(1.0);
    }
    let lx = -rho / (1.0 - rho) * x.ln();
    over_theta(rho, lx, |y| (-y.exp()).exp())
}

pub(crate) fn sf(rho: f64, x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Ok(1.0);
    }
    if x.is_infinite() {
        return Ok(0.0);
    }
    let lx = -rho / (1.0 - rho) * x.ln();
    over_theta(rho, lx, |y| -(-y.exp()).exp_m1())
}

pub(crate) fn pdf(rho: f64, x: f64) -> Result<f64> {
    if x <= 0.0 {
        return Ok(0.0);
    }
    let kappa = rho / (1.0 - rho);
    let lx = -kappa * x.ln();
    let v = over_theta(rho, lx, |y| (y - y.exp()).exp())?;
    Ok(v * kappa / x)
}
