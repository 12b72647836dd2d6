//! Laplace-transform calculus for positive laws.
//!
//! A [`LaplaceTransform`] is an immutable expression tree. Leaves are catalog
//! laws or user functions; inner nodes are the constructions of the
//! selfdecomposable / shot-noise calculus:
//!
//! * [`sn_lt_from_jumps`]: log Φ(s) = −ρ ∫_0^s (1 − G(u)) du/u
//! * [`jump_lt_from_sn`]: G(s) = 1 + s (log Φ)'(s) / ρ
//! * [`bdlp_from_sd`]: log Ψ(s) = s Φ'(s)/Φ(s)
//! * [`sd_from_bdlp`]: log Φ(s) = ∫_0^s log Ψ(r) dr/r
//! * [`subordinate`]: Φ₃(s) = Φ₂(−ln Φ₁(s))
//!
//! Everything is evaluated in log form so that Φ(s) may underflow without
//! losing the local index −sΦ'/Φ. The improper integrals over (0, s] are
//! mapped to [0, ∞) by u = s e^{−y}, which turns du/u into dy and removes the
//! singularity at the origin.

use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::inversion::{euler_with_estimate, stehfest_with_estimate, Inversion};
use crate::law::NamedLaw;
use crate::quad::{integrate_to_infinity_breaks, QuadValue, Tolerance};

const Y_TOL: Tolerance = Tolerance::new(1e-15, 1e-12);
/// Identified jump transforms within this of zero are read as zero.
const JUMP_ZERO_TOL: f64 = 1e-8;

/// How a transform was built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Provenance {
    ClosedForm(NamedLaw),
    /// Stationary shot-noise transform from a jump transform.
    ShotNoiseFromJumps,
    /// Selfdecomposable transform from its background driving transform.
    SdFromBdlp,
    /// Background driving transform read off a selfdecomposable one.
    BdlpFromSd,
    /// Jump transform read off a shot-noise transform.
    JumpsFromShotNoise,
    Subordinated,
    Product,
    CompoundPoisson,
    Scaled,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DerivativeMode {
    Analytic,
    /// Central differences with step s·1e-3 and one Richardson step.
    CentralDifference,
}

type LogFn = dyn Fn(f64) -> f64 + Send + Sync;

enum Node {
    Law(NamedLaw),
    ShotNoise { jumps: LaplaceTransform, rho: f64 },
    SdFromBdlp { psi: LaplaceTransform },
    BdlpFromSd { phi: LaplaceTransform },
    JumpsFromShotNoise { phi: LaplaceTransform, rho: f64 },
    Subordinated { inner: LaplaceTransform, outer: LaplaceTransform },
    Product(Vec<LaplaceTransform>),
    CompoundPoisson { rate: f64, jumps: LaplaceTransform },
    Scaled { inner: LaplaceTransform, c: f64 },
    Numeric(Arc<LogFn>),
}

/// An evaluable s ↦ Φ(s) on s ≥ 0.
#[derive(Clone)]
pub struct LaplaceTransform(Arc<Node>);

impl fmt::Debug for LaplaceTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.0 {
            Node::Law(law) => write!(f, "Law({law:?})"),
            Node::ShotNoise { jumps, rho } => write!(f, "ShotNoise({jumps:?}, rho={rho})"),
            Node::SdFromBdlp { psi } => write!(f, "SdFromBdlp({psi:?})"),
            Node::BdlpFromSd { phi } => write!(f, "BdlpFromSd({phi:?})"),
            Node::JumpsFromShotNoise { phi, rho } => {
                write!(f, "JumpsFromShotNoise({phi:?}, rho={rho})")
            }
            Node::Subordinated { inner, outer } => write!(f, "Subordinated({inner:?}, {outer:?})"),
            Node::Product(parts) => f.debug_tuple("Product").field(parts).finish(),
            Node::CompoundPoisson { rate, jumps } => {
                write!(f, "CompoundPoisson(rate={rate}, {jumps:?})")
            }
            Node::Scaled { inner, c } => write!(f, "Scaled({inner:?}, c={c})"),
            Node::Numeric(_) => f.write_str("Numeric"),
        }
    }
}

fn domain(s: f64) -> Error {
    Error::Domain {
        function: "laplace transform",
        value: s,
        expected: "s ≥ 0",
    }
}

fn not_complex(transform: &'static str) -> Error {
    Error::NoComplexContinuation { transform }
}

/// 1 − e^{l} without cancellation for small |l|.
fn one_minus_exp(l: Complex64) -> Complex64 {
    if l.norm() < 1e-5 {
        -(l + l * l * 0.5 + l * l * l / 6.0)
    } else {
        Complex64::new(1.0, 0.0) - l.exp()
    }
}

/// ∫_0^∞ f(s e^{-y}) dy, with a break at y = ln|s| where f stops being flat.
fn ray_integral<T, F>(s_abs: f64, mut f: F, context: &'static str) -> Result<T>
where
    T: QuadValue,
    F: FnMut(f64) -> Result<T>,
{
    let mut err = None;
    // Below |u| = 1e-280 complex division underflows; valid integrands are
    // O(|u|^ρ) there and the remainder is dropped.
    let y_max = s_abs.ln() + 280.0 * core::f64::consts::LN_10;
    let mut g = |y: f64| match if y > y_max { Ok(T::zero()) } else { f((-y).exp()) } {
        Ok(v) => v,
        Err(e) => {
            err.get_or_insert(e);
            T::zero()
        }
    };
    let knee = s_abs.ln();
    let points: &[f64] = if knee > 0.5 { &[0.0, knee] } else { &[0.0] };
    let r = integrate_to_infinity_breaks(&mut g, points, &Y_TOL);
    if let Some(e) = err {
        return Err(e);
    }
    r.into_result(context)
}

fn central_difference<T, F>(f: F, s: T, h: f64) -> Result<T>
where
    T: QuadValue + core::ops::Div<f64, Output = T>,
    F: Fn(T) -> Result<T>,
{
    let step = |h: f64| -> Result<T> {
        let hp = f(s + T::from_real(h))?;
        let hm = f(s - T::from_real(h))?;
        Ok((hp - hm) / (2.0 * h))
    };
    let d1 = step(h)?;
    let d2 = step(0.5 * h)?;
    Ok((d2 * 4.0 - d1) / 3.0)
}

impl LaplaceTransform {
    fn node(node: Node) -> Self {
        Self(Arc::new(node))
    }

    /// Transform of a catalog law.
    pub fn from_law(law: NamedLaw) -> Result<Self> {
        if !law.has_laplace_transform() {
            return Err(Error::UnsupportedTransform { law: law.name() });
        }
        Ok(Self::node(Node::Law(law)))
    }

    /// Φ ≡ 1, the transform of the point mass at 0.
    pub fn one() -> Self {
        Self::node(Node::Law(NamedLaw::degenerate(0.0).expect("c = 0 is valid")))
    }

    /// A transform given by its logarithm. Derivatives use central differences
    /// and complex evaluation is unavailable.
    pub fn from_log_fn(log_phi: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self::node(Node::Numeric(Arc::new(log_phi)))
    }

    /// Φ₁(s)·Φ₂(s)⋯, the transform of an independent sum.
    pub fn product(parts: Vec<LaplaceTransform>) -> Self {
        Self::node(Node::Product(parts))
    }

    /// exp(−rate (1 − G(s))), the compound Poisson law at time 1.
    pub fn compound_poisson(rate: f64, jumps: LaplaceTransform) -> Result<Self> {
        if !(rate > 0.0 && rate.is_finite()) {
            return Err(Error::InvalidParameter {
                context: "compound_poisson",
                reason: alloc::format!("rate {rate} must be positive and finite"),
            });
        }
        Ok(Self::node(Node::CompoundPoisson { rate, jumps }))
    }

    /// Φ(c s), the transform of c·X.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite()) {
            return Err(Error::InvalidParameter {
                context: "scaled",
                reason: alloc::format!("scale {c} must be positive and finite"),
            });
        }
        Ok(Self::node(Node::Scaled { inner: self.clone(), c }))
    }

    pub fn provenance(&self) -> Provenance {
        match &*self.0 {
            Node::Law(law) => Provenance::ClosedForm(*law),
            Node::ShotNoise { .. } => Provenance::ShotNoiseFromJumps,
            Node::SdFromBdlp { .. } => Provenance::SdFromBdlp,
            Node::BdlpFromSd { .. } => Provenance::BdlpFromSd,
            Node::JumpsFromShotNoise { .. } => Provenance::JumpsFromShotNoise,
            Node::Subordinated { .. } => Provenance::Subordinated,
            Node::Product(_) => Provenance::Product,
            Node::CompoundPoisson { .. } => Provenance::CompoundPoisson,
            Node::Scaled { .. } => Provenance::Scaled,
            Node::Numeric(_) => Provenance::Numeric,
        }
    }

    /// The catalog law, when this is a closed-form leaf.
    pub fn law(&self) -> Option<NamedLaw> {
        match &*self.0 {
            Node::Law(law) => Some(*law),
            _ => None,
        }
    }

    pub fn eval(&self, s: f64) -> Result<f64> {
        Ok(self.log_eval(s)?.exp())
    }

    /// ln Φ(s).
    pub fn log_eval(&self, s: f64) -> Result<f64> {
        if !(s >= 0.0) {
            return Err(domain(s));
        }
        if s == 0.0 {
            return Ok(0.0);
        }
        match &*self.0 {
            Node::Law(law) => law.log_lt(s),
            Node::ShotNoise { jumps, rho } => {
                let int = ray_integral(
                    s,
                    |t| Ok(-jumps.log_eval(s * t)?.exp_m1()),
                    "shot-noise transform",
                )?;
                Ok(-rho * int)
            }
            Node::SdFromBdlp { psi } => {
                ray_integral(s, |t| psi.log_eval(s * t), "selfdecomposable transform")
            }
            Node::BdlpFromSd { phi } => Ok(s * phi.log_derivative(s)?),
            Node::JumpsFromShotNoise { phi, rho } => {
                let g = 1.0 + s * phi.log_derivative(s)? / rho;
                if g > 0.0 {
                    Ok(g.ln())
                } else if g > -JUMP_ZERO_TOL {
                    // G is only resolved in absolute terms; below that it is 0.
                    Ok(f64::MIN_POSITIVE.ln())
                } else {
                    Err(Error::NotLaplaceTransform { s, value: g })
                }
            }
            Node::Subordinated { inner, outer } => outer.log_eval(-inner.log_eval(s)?),
            Node::Product(parts) => parts.iter().map(|p| p.log_eval(s)).sum(),
            Node::CompoundPoisson { rate, jumps } => Ok(rate * jumps.log_eval(s)?.exp_m1()),
            Node::Scaled { inner, c } => inner.log_eval(c * s),
            Node::Numeric(f) => {
                let v = f(s);
                if v.is_nan() || v > 1e-12 {
                    Err(Error::NotLaplaceTransform { s, value: v.exp() })
                } else {
                    Ok(v.min(0.0))
                }
            }
        }
    }

    /// Whether [`log_derivative`](Self::log_derivative) avoids finite differences.
    pub fn derivative_mode(&self) -> DerivativeMode {
        let analytic = match &*self.0 {
            Node::Law(law) => law.log_lt_derivative(1.0).is_some(),
            Node::ShotNoise { .. } | Node::SdFromBdlp { .. } => true,
            Node::BdlpFromSd { .. } | Node::JumpsFromShotNoise { .. } | Node::Numeric(_) => false,
            Node::Subordinated { inner, outer } => {
                inner.derivative_mode() == DerivativeMode::Analytic
                    && outer.derivative_mode() == DerivativeMode::Analytic
            }
            Node::Product(parts) => parts
                .iter()
                .all(|p| p.derivative_mode() == DerivativeMode::Analytic),
            Node::CompoundPoisson { jumps: inner, .. } | Node::Scaled { inner, .. } => {
                inner.derivative_mode() == DerivativeMode::Analytic
            }
        };
        if analytic {
            DerivativeMode::Analytic
        } else {
            DerivativeMode::CentralDifference
        }
    }

    /// d/ds ln Φ(s) for s > 0.
    pub fn log_derivative(&self, s: f64) -> Result<f64> {
        if !(s > 0.0) {
            return Err(domain(s));
        }
        let v = match &*self.0 {
            Node::Law(law) => match law.log_lt_derivative(s) {
                Some(d) => d,
                None => self.numeric_derivative(s)?,
            },
            Node::ShotNoise { jumps, rho } => rho * jumps.log_eval(s)?.exp_m1() / s,
            Node::SdFromBdlp { psi } => psi.log_eval(s)? / s,
            Node::BdlpFromSd { .. } | Node::JumpsFromShotNoise { .. } | Node::Numeric(_) => {
                self.numeric_derivative(s)?
            }
            Node::Subordinated { inner, outer } => {
                -outer.log_derivative_at(-inner.log_eval(s)?)? * inner.log_derivative(s)?
            }
            Node::Product(parts) => {
                let mut sum = 0.0;
                for p in parts {
                    sum += p.log_derivative(s)?;
                }
                sum
            }
            Node::CompoundPoisson { rate, jumps } => {
                rate * jumps.eval(s)? * jumps.log_derivative(s)?
            }
            Node::Scaled { inner, c } => c * inner.log_derivative(c * s)?,
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Differentiation { s })
        }
    }

    /// Like `log_derivative` but also accepts s = 0 (one-sided there).
    fn log_derivative_at(&self, s: f64) -> Result<f64> {
        if s == 0.0 {
            let h = 1e-8;
            return Ok(self.log_eval(h)? / h);
        }
        self.log_derivative(s)
    }

    fn numeric_derivative(&self, s: f64) -> Result<f64> {
        let h = 1e-3 * s;
        central_difference(|x: f64| self.log_eval(x), s, h)
            .ok()
            .filter(|d| d.is_finite())
            .ok_or(Error::Differentiation { s })
    }

    /// Local index −s Φ'(s)/Φ(s).
    pub fn local_index(&self, s: f64) -> Result<f64> {
        Ok(-s * self.log_derivative(s)?)
    }

    /// Can be evaluated at complex s with Re s > 0.
    pub fn supports_complex(&self) -> bool {
        match &*self.0 {
            Node::Law(law) => law.log_lt_complex(Complex64::new(1.0, 0.0)).is_some(),
            Node::Numeric(_) => false,
            Node::ShotNoise { jumps: t, .. }
            | Node::SdFromBdlp { psi: t }
            | Node::BdlpFromSd { phi: t }
            | Node::JumpsFromShotNoise { phi: t, .. }
            | Node::CompoundPoisson { jumps: t, .. }
            | Node::Scaled { inner: t, .. } => t.supports_complex(),
            Node::Subordinated { inner, outer } => {
                inner.supports_complex() && outer.supports_complex()
            }
            Node::Product(parts) => parts.iter().all(|p| p.supports_complex()),
        }
    }

    /// ln Φ(s) continued to Re s > 0.
    pub fn log_eval_complex(&self, s: Complex64) -> Result<Complex64> {
        if s == Complex64::new(0.0, 0.0) {
            return Ok(s);
        }
        match &*self.0 {
            Node::Law(law) => law
                .log_lt_complex(s)
                .ok_or_else(|| not_complex(law.name())),
            Node::ShotNoise { jumps, rho } => {
                let int = ray_integral(
                    s.norm(),
                    |t| Ok(one_minus_exp(jumps.log_eval_complex(s * t)?)),
                    "shot-noise transform",
                )?;
                Ok(int * -rho)
            }
            Node::SdFromBdlp { psi } => ray_integral(
                s.norm(),
                |t| psi.log_eval_complex(s * t),
                "selfdecomposable transform",
            ),
            Node::BdlpFromSd { phi } => Ok(s * phi.log_derivative_complex(s)?),
            Node::JumpsFromShotNoise { phi, rho } => {
                Ok((s * phi.log_derivative_complex(s)? / *rho + 1.0).ln())
            }
            Node::Subordinated { inner, outer } => {
                outer.log_eval_complex(-inner.log_eval_complex(s)?)
            }
            Node::Product(parts) => {
                let mut sum = Complex64::new(0.0, 0.0);
                for p in parts {
                    sum += p.log_eval_complex(s)?;
                }
                Ok(sum)
            }
            Node::CompoundPoisson { rate, jumps } => {
                Ok(-one_minus_exp(jumps.log_eval_complex(s)?) * *rate)
            }
            Node::Scaled { inner, c } => inner.log_eval_complex(s * *c),
            Node::Numeric(_) => Err(not_complex("numeric")),
        }
    }

    /// d/ds ln Φ(s) continued to Re s > 0.
    pub fn log_derivative_complex(&self, s: Complex64) -> Result<Complex64> {
        match &*self.0 {
            Node::Law(law) => match law.log_lt_derivative_complex(s) {
                Some(d) => Ok(d),
                None => Err(not_complex(law.name())),
            },
            Node::ShotNoise { jumps, rho } => {
                Ok((-one_minus_exp(jumps.log_eval_complex(s)?) * *rho).fdiv(s))
            }
            Node::SdFromBdlp { psi } => Ok(psi.log_eval_complex(s)?.fdiv(s)),
            Node::Subordinated { inner, outer } => Ok(-outer
                .log_derivative_complex(-inner.log_eval_complex(s)?)?
                * inner.log_derivative_complex(s)?),
            Node::Product(parts) => {
                let mut sum = Complex64::new(0.0, 0.0);
                for p in parts {
                    sum += p.log_derivative_complex(s)?;
                }
                Ok(sum)
            }
            Node::CompoundPoisson { rate, jumps } => Ok(jumps.log_eval_complex(s)?.exp()
                * jumps.log_derivative_complex(s)?
                * *rate),
            Node::Scaled { inner, c } => Ok(inner.log_derivative_complex(s * *c)? * *c),
            Node::Numeric(_) => Err(not_complex("numeric")),
            Node::BdlpFromSd { .. } | Node::JumpsFromShotNoise { .. } => {
                // Holomorphic, so a real-direction difference is the derivative.
                let h = 1e-3 * s.norm();
                central_difference(|z: Complex64| self.log_eval_complex(z), s, h)
            }
        }
    }

    /// Grid checks of Φ ∈ (0, 1], monotonicity and log-convexity.
    pub fn check_validity(&self, grid: &[f64]) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut logs = Vec::with_capacity(grid.len());
        for &s in grid {
            match self.log_eval(s) {
                Ok(l) if l <= 1e-12 && l.is_finite() => logs.push(l),
                Ok(l) => {
                    out.push(Violation { s, value: l, check: "range" });
                    logs.push(l);
                }
                Err(_) => {
                    out.push(Violation { s, value: f64::NAN, check: "evaluation" });
                    logs.push(f64::NAN);
                }
            }
        }
        for i in 1..grid.len() {
            if logs[i] > logs[i - 1] + 1e-10 * logs[i - 1].abs().max(1.0) {
                out.push(Violation { s: grid[i], value: logs[i] - logs[i - 1], check: "monotone" });
            }
            if i + 1 < grid.len() {
                let (x0, x1, x2) = (grid[i - 1], grid[i], grid[i + 1]);
                let interp = logs[i - 1] + (logs[i + 1] - logs[i - 1]) * (x1 - x0) / (x2 - x0);
                let slack = 1e-9 * interp.abs().max(1.0);
                if logs[i] > interp + slack {
                    out.push(Violation { s: x1, value: logs[i] - interp, check: "log-convex" });
                }
            }
        }
        out
    }
}

/// A failed grid check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Violation {
    pub s: f64,
    pub value: f64,
    pub check: &'static str,
}

/// `n` log-spaced points from `a` to `b` inclusive.
pub fn log_grid(a: f64, b: f64, n: usize) -> Vec<f64> {
    if n == 1 {
        return alloc::vec![a];
    }
    let (la, lb) = (a.ln(), b.ln());
    (0..n)
        .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn check_rho(context: &'static str, rho: f64) -> Result<()> {
    if rho > 0.0 && rho.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            context,
            reason: alloc::format!("rho = {rho} must be positive and finite"),
        })
    }
}

/// Stationary transform of exponential-response shot noise with ρ = λ/ω.
pub fn sn_lt_from_jumps(jump_lt: &LaplaceTransform, rho: f64) -> Result<LaplaceTransform> {
    check_rho("sn_lt_from_jumps", rho)?;
    Ok(LaplaceTransform::node(Node::ShotNoise {
        jumps: jump_lt.clone(),
        rho,
    }))
}

/// Grid used to validate identified jump transforms.
pub fn identification_grid() -> Vec<f64> {
    log_grid(1e-3, 1e3, 31)
}

/// Jump transform G with Φ = sn_lt_from_jumps(G, ρ). Fails with
/// [`Error::NotLaplaceTransform`] when G leaves [0, 1] on the validation
/// grid, i.e. Φ is not a shot-noise transform with this ρ.
pub fn jump_lt_from_sn(phi: &LaplaceTransform, rho: f64) -> Result<LaplaceTransform> {
    check_rho("jump_lt_from_sn", rho)?;
    let tol = 1e-6;
    for s in identification_grid() {
        let g = 1.0 + s * phi.log_derivative(s)? / rho;
        if !(-tol..=1.0 + tol).contains(&g) {
            return Err(Error::NotLaplaceTransform { s, value: g });
        }
    }
    Ok(LaplaceTransform::node(Node::JumpsFromShotNoise {
        phi: phi.clone(),
        rho,
    }))
}

/// Background driving transform Ψ of Φ, with any grid points where
/// log Ψ > 0 (evidence that Φ is not selfdecomposable).
#[derive(Debug, Clone)]
pub struct BdlpIdentification {
    pub psi: LaplaceTransform,
    pub violations: Vec<Violation>,
}

pub fn bdlp_from_sd(phi: &LaplaceTransform) -> Result<BdlpIdentification> {
    let psi = LaplaceTransform::node(Node::BdlpFromSd { phi: phi.clone() });
    let mut violations = Vec::new();
    for s in log_grid(1e-2, 1e2, 40) {
        let l = psi.log_eval(s)?;
        if l > 1e-9 {
            violations.push(Violation { s, value: l, check: "log psi ≤ 0" });
        }
    }
    Ok(BdlpIdentification { psi, violations })
}

/// Selfdecomposable transform driven by Ψ. Requires log Ψ(0+) = 0.
pub fn sd_from_bdlp(psi: &LaplaceTransform) -> Result<LaplaceTransform> {
    let at_zero = psi.log_eval(1e-12)?;
    if at_zero.abs() > 1e-6 || !at_zero.is_finite() {
        return Err(Error::SingularIntegrand { at_zero });
    }
    Ok(LaplaceTransform::node(Node::SdFromBdlp { psi: psi.clone() }))
}

/// Transform of X₁(X₂(1)) for subordinators with X₁(1) ~ Φ₁, X₂(1) ~ Φ₂.
pub fn subordinate(phi1: &LaplaceTransform, phi2: &LaplaceTransform) -> LaplaceTransform {
    LaplaceTransform::node(Node::Subordinated {
        inner: phi1.clone(),
        outer: phi2.clone(),
    })
}

/// F(x) from the law's transform Φ, by inverting Φ(s)/s.
///
/// Uses Euler summation when Φ continues to complex arguments and falls back
/// to Gaver–Stehfest otherwise or when a complex evaluation fails. The
/// returned precision is the spread between two orders; check it with
/// [`Inversion::unstable`].
pub fn invert_lt(phi: &LaplaceTransform, x: f64) -> Result<Inversion> {
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain {
            function: "invert_lt",
            value: x,
            expected: "0 < x < ∞",
        });
    }
    if phi.supports_complex() {
        let failed = core::cell::Cell::new(false);
        let r = euler_with_estimate(
            |s| match phi.log_eval_complex(s) {
                Ok(l) => l.exp() / s,
                Err(_) => {
                    failed.set(true);
                    Complex64::new(0.0, 0.0)
                }
            },
            x,
        );
        if !failed.get() && r.value.is_finite() {
            return Ok(Inversion {
                value: r.value.clamp(0.0, 1.0),
                ..r
            });
        }
    }
    let err = core::cell::RefCell::new(None);
    let r = stehfest_with_estimate(
        |s| match phi.eval(s) {
            Ok(v) => v / s,
            Err(e) => {
                err.borrow_mut().get_or_insert(e);
                0.0
            }
        },
        x,
    );
    if let Some(e) = err.into_inner() {
        return Err(e);
    }
    Ok(Inversion {
        value: r.value.clamp(0.0, 1.0),
        ..r
    })
}
