//! Catalog of positive laws used as jump distributions and as targets.
//!
//! Parameterizations:
//!
//! | kind | parameters | Laplace transform / distribution function |
//! |------|------------|-------------------------------------------|
//! | `Exponential` | rate β | 1/(1 + s/β) |
//! | `Gamma` | shape ρ, rate β | (1 + s/β)^{-ρ} |
//! | `PositiveStable` | 0 < ρ < 1 | e^{-s^ρ} |
//! | `PositiveLinnik` | 0 < ρ ≤ 1, β > 0 | 1/(1 + β s^ρ); F(x) = 1 − E_ρ(−x^ρ/β) |
//! | `GeneralizedLinnik` | ρ > 0, 0 < ρ₁ ≤ 1, β > 0 | (1 + β s^{ρ₁})^{-ρ/ρ₁} |
//! | `Bessel` | ρ > 0 | (1+s)^{-ρ} exp(−ρ s/(1+s)) |
//! | `Burr` | β₁ > 0, β₂ > ρ > 0 | F(x) = 1 − (β₁/(x^ρ + β₁))^{β₂} |
//! | `Weibull` | 0 < ρ ≤ 1, β > 0 | F(x) = 1 − exp(−β x^ρ) |
//! | `HalfCauchy` | | density 2/(π(1+x²)) |
//! | `LogCauchy` | | density 1/(π x (1 + ln² x)) |
//! | `Degenerate` | c ≥ 0 | e^{-cs} |
//! | `LogPareto` | | P(ξ > x) = 1/ln x, x > e |
//! | `Pareto` | α > 0 | P(ξ > x) = x^{-α}, x ≥ 1 |
//!
//! `LogPareto` and `Pareto` are moment fixtures for the existence criteria:
//! `LogPareto` has E ln(1+ξ) = ∞ and `Pareto(α)` has E ξ^p = ∞ for p ≥ α.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_2_PI, PI};

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;
use rand::Rng;
use rand_distr::{Distribution, Exp, Gamma as GammaDist, Open01, Poisson};

use crate::error::{Error, Result};
use crate::inversion::euler_with_estimate;
use crate::quad::{integrate, integrate_breaks, Tolerance};
use crate::special::{incomplete, ln_gamma_pos, mittag_leffler, mittag_leffler_complement,
    mittag_leffler_derivative, bessel_i_scaled, gamma};
use crate::stable;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LawKind {
    Exponential { beta: f64 },
    Gamma { rho: f64, beta: f64 },
    PositiveStable { rho: f64 },
    PositiveLinnik { rho: f64, beta: f64 },
    GeneralizedLinnik { rho: f64, rho1: f64, beta: f64 },
    Bessel { rho: f64 },
    Burr { rho: f64, beta1: f64, beta2: f64 },
    Weibull { rho: f64, beta: f64 },
    HalfCauchy,
    LogCauchy,
    Degenerate { c: f64 },
    LogPareto,
    Pareto { alpha: f64 },
}

/// How [`NamedLaw::cdf`] is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CdfMethod {
    ClosedForm,
    SpecialFunction,
    Quadrature,
    /// Numerical inversion of the Laplace transform; accurate in absolute
    /// terms only (about 1e-8).
    LtInversion,
}

/// A validated law from the catalog.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NamedLaw {
    kind: LawKind,
}

fn invalid(context: &'static str, reason: &str) -> Error {
    Error::InvalidParameter {
        context,
        reason: reason.into(),
    }
}

fn positive(context: &'static str, name: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(context, &alloc::format!("{name} = {v} must be positive and finite")))
    }
}

fn unit_interval(context: &'static str, name: &str, v: f64, closed: bool) -> Result<()> {
    let ok = v > 0.0 && (v < 1.0 || closed && v == 1.0);
    if ok {
        Ok(())
    } else {
        let bound = if closed { "(0, 1]" } else { "(0, 1)" };
        Err(invalid(context, &alloc::format!("{name} = {v} must lie in {bound}")))
    }
}

const LT_TOL: Tolerance = Tolerance::new(1e-300, 1e-13);

impl NamedLaw {
    pub fn new(kind: LawKind) -> Result<Self> {
        use LawKind::*;
        match kind {
            Exponential { beta } => positive("exponential", "beta", beta)?,
            Gamma { rho, beta } => {
                positive("gamma", "rho", rho)?;
                positive("gamma", "beta", beta)?;
            }
            PositiveStable { rho } => unit_interval("positive_stable", "rho", rho, false)?,
            PositiveLinnik { rho, beta } => {
                unit_interval("positive_linnik", "rho", rho, true)?;
                positive("positive_linnik", "beta", beta)?;
            }
            GeneralizedLinnik { rho, rho1, beta } => {
                positive("generalized_linnik", "rho", rho)?;
                unit_interval("generalized_linnik", "rho1", rho1, true)?;
                positive("generalized_linnik", "beta", beta)?;
            }
            Bessel { rho } => positive("bessel", "rho", rho)?,
            Burr { rho, beta1, beta2 } => {
                positive("burr", "rho", rho)?;
                positive("burr", "beta1", beta1)?;
                positive("burr", "beta2", beta2)?;
                if !(beta2 > rho) {
                    return Err(invalid("burr", "requires beta2 > rho > 0"));
                }
            }
            Weibull { rho, beta } => {
                unit_interval("weibull", "rho", rho, true)?;
                positive("weibull", "beta", beta)?;
            }
            Degenerate { c } => {
                if !(c >= 0.0 && c.is_finite()) {
                    return Err(invalid("degenerate", "c must be finite and nonnegative"));
                }
            }
            Pareto { alpha } => positive("pareto", "alpha", alpha)?,
            HalfCauchy | LogCauchy | LogPareto => {}
        }
        Ok(Self { kind })
    }

    pub fn exponential(beta: f64) -> Result<Self> {
        Self::new(LawKind::Exponential { beta })
    }
    pub fn gamma(rho: f64, beta: f64) -> Result<Self> {
        Self::new(LawKind::Gamma { rho, beta })
    }
    pub fn positive_stable(rho: f64) -> Result<Self> {
        Self::new(LawKind::PositiveStable { rho })
    }
    pub fn positive_linnik(rho: f64, beta: f64) -> Result<Self> {
        Self::new(LawKind::PositiveLinnik { rho, beta })
    }
    pub fn generalized_linnik(rho: f64, rho1: f64, beta: f64) -> Result<Self> {
        Self::new(LawKind::GeneralizedLinnik { rho, rho1, beta })
    }
    pub fn bessel(rho: f64) -> Result<Self> {
        Self::new(LawKind::Bessel { rho })
    }
    pub fn burr(rho: f64, beta1: f64, beta2: f64) -> Result<Self> {
        Self::new(LawKind::Burr { rho, beta1, beta2 })
    }
    pub fn weibull(rho: f64, beta: f64) -> Result<Self> {
        Self::new(LawKind::Weibull { rho, beta })
    }
    pub fn half_cauchy() -> Self {
        Self { kind: LawKind::HalfCauchy }
    }
    pub fn log_cauchy() -> Self {
        Self { kind: LawKind::LogCauchy }
    }
    pub fn degenerate(c: f64) -> Result<Self> {
        Self::new(LawKind::Degenerate { c })
    }
    pub fn log_pareto() -> Self {
        Self { kind: LawKind::LogPareto }
    }
    pub fn pareto(alpha: f64) -> Result<Self> {
        Self::new(LawKind::Pareto { alpha })
    }

    pub fn kind(&self) -> LawKind {
        self.kind
    }

    /// Stable identifier used in serialized form.
    pub fn name(&self) -> &'static str {
        use LawKind::*;
        match self.kind {
            Exponential { .. } => "exponential",
            Gamma { .. } => "gamma",
            PositiveStable { .. } => "positive_stable",
            PositiveLinnik { .. } => "positive_linnik",
            GeneralizedLinnik { .. } => "generalized_linnik",
            Bessel { .. } => "bessel",
            Burr { .. } => "burr",
            Weibull { .. } => "weibull",
            HalfCauchy => "half_cauchy",
            LogCauchy => "log_cauchy",
            Degenerate { .. } => "degenerate",
            LogPareto => "log_pareto",
            Pareto { .. } => "pareto",
        }
    }

    /// Named parameters in serialized order.
    pub fn params(&self) -> Vec<(&'static str, f64)> {
        use LawKind::*;
        match self.kind {
            Exponential { beta } => vec![("beta", beta)],
            Gamma { rho, beta } => vec![("rho", rho), ("beta", beta)],
            PositiveStable { rho } => vec![("rho", rho)],
            PositiveLinnik { rho, beta } => vec![("rho", rho), ("beta", beta)],
            GeneralizedLinnik { rho, rho1, beta } => {
                vec![("rho", rho), ("rho1", rho1), ("beta", beta)]
            }
            Bessel { rho } => vec![("rho", rho)],
            Burr { rho, beta1, beta2 } => vec![("rho", rho), ("beta1", beta1), ("beta2", beta2)],
            Weibull { rho, beta } => vec![("rho", rho), ("beta", beta)],
            Degenerate { c } => vec![("c", c)],
            Pareto { alpha } => vec![("alpha", alpha)],
            HalfCauchy | LogCauchy | LogPareto => Vec::new(),
        }
    }

    /// Inverse of [`name`](Self::name) / [`params`](Self::params).
    /// `param` looks a parameter up by name.
    pub fn from_name(name: &str, param: impl Fn(&str) -> Option<f64>) -> Result<Self> {
        let get = |key: &'static str| {
            param(key).ok_or_else(|| Error::InvalidParameter {
                context: "law",
                reason: alloc::format!("missing parameter `{key}` for `{name}`"),
            })
        };
        let kind = match name {
            "exponential" => LawKind::Exponential { beta: get("beta")? },
            "gamma" => LawKind::Gamma { rho: get("rho")?, beta: get("beta")? },
            "positive_stable" => LawKind::PositiveStable { rho: get("rho")? },
            "positive_linnik" => LawKind::PositiveLinnik { rho: get("rho")?, beta: get("beta")? },
            "generalized_linnik" => LawKind::GeneralizedLinnik {
                rho: get("rho")?,
                rho1: get("rho1")?,
                beta: get("beta")?,
            },
            "bessel" => LawKind::Bessel { rho: get("rho")? },
            "burr" => LawKind::Burr {
                rho: get("rho")?,
                beta1: get("beta1")?,
                beta2: get("beta2")?,
            },
            "weibull" => LawKind::Weibull { rho: get("rho")?, beta: get("beta")? },
            "half_cauchy" => LawKind::HalfCauchy,
            "log_cauchy" => LawKind::LogCauchy,
            "degenerate" => LawKind::Degenerate { c: get("c")? },
            "log_pareto" => LawKind::LogPareto,
            "pareto" => LawKind::Pareto { alpha: get("alpha")? },
            other => {
                return Err(Error::InvalidParameter {
                    context: "law",
                    reason: alloc::format!("unknown law kind `{other}`"),
                })
            }
        };
        Self::new(kind)
    }

    /// The catalog lists the law as selfdecomposable.
    pub fn sd_provenance(&self) -> bool {
        !matches!(
            self.kind,
            LawKind::LogCauchy | LawKind::LogPareto | LawKind::Pareto { .. }
        )
    }

    pub fn has_density(&self) -> bool {
        !matches!(self.kind, LawKind::Degenerate { .. } | LawKind::LogPareto)
    }

    pub fn has_laplace_transform(&self) -> bool {
        !matches!(self.kind, LawKind::LogCauchy | LawKind::LogPareto)
    }

    /// Location of the single atom, if any.
    pub fn atom(&self) -> Option<f64> {
        match self.kind {
            LawKind::Degenerate { c } => Some(c),
            _ => None,
        }
    }

    /// Supremum of the p with E ξ^p < ∞ (E ξ^p = ∞ at the boundary).
    pub fn moment_index(&self) -> f64 {
        use LawKind::*;
        match self.kind {
            Exponential { .. } | Gamma { .. } | Weibull { .. } | Bessel { .. } | Degenerate { .. } => {
                f64::INFINITY
            }
            PositiveStable { rho } => rho,
            PositiveLinnik { rho, .. } => {
                if rho < 1.0 {
                    rho
                } else {
                    f64::INFINITY
                }
            }
            GeneralizedLinnik { rho1, .. } => {
                if rho1 < 1.0 {
                    rho1
                } else {
                    f64::INFINITY
                }
            }
            Burr { rho, beta2, .. } => rho * beta2,
            HalfCauchy => 1.0,
            Pareto { alpha } => alpha,
            LogCauchy | LogPareto => 0.0,
        }
    }

    /// E ln(1 + ξ) < ∞.
    pub fn log_moment_finite(&self) -> bool {
        self.moment_index() > 0.0
    }

    /// E ξ^p < ∞ for p > 0.
    pub fn moment_finite(&self, p: f64) -> bool {
        p < self.moment_index()
    }

    /// E ξ when finite and known in closed form.
    pub fn mean(&self) -> Option<f64> {
        use LawKind::*;
        match self.kind {
            Exponential { beta } => Some(1.0 / beta),
            Gamma { rho, beta } => Some(rho / beta),
            PositiveLinnik { rho, beta } if rho == 1.0 => Some(beta),
            GeneralizedLinnik { rho, rho1, beta } if rho1 == 1.0 => Some(rho * beta),
            Bessel { rho } => Some(2.0 * rho),
            Weibull { rho, beta } => {
                Some((ln_gamma_pos(1.0 + 1.0 / rho) - beta.ln() / rho).exp())
            }
            Degenerate { c } => Some(c),
            Pareto { alpha } if alpha > 1.0 => Some(alpha / (alpha - 1.0)),
            _ => None,
        }
    }

    // ---------------------------------------------------------------- LT

    fn unsupported(&self) -> Error {
        Error::UnsupportedTransform { law: self.name() }
    }

    /// Laplace transform E e^{-sξ}, s ≥ 0.
    pub fn lt(&self, s: f64) -> Result<f64> {
        Ok(self.log_lt(s)?.exp())
    }

    /// ln E e^{-sξ}, s ≥ 0.
    pub fn log_lt(&self, s: f64) -> Result<f64> {
        use LawKind::*;
        if !(s >= 0.0) {
            return Err(Error::Domain {
                function: "lt",
                value: s,
                expected: "s ≥ 0",
            });
        }
        if !self.has_laplace_transform() {
            return Err(self.unsupported());
        }
        if s == 0.0 {
            return Ok(0.0);
        }
        Ok(match self.kind {
            Exponential { beta } => -(s / beta).ln_1p(),
            Gamma { rho, beta } => -rho * (s / beta).ln_1p(),
            PositiveStable { rho } => -s.powf(rho),
            PositiveLinnik { rho, beta } => -(beta * s.powf(rho)).ln_1p(),
            GeneralizedLinnik { rho, rho1, beta } => -(rho / rho1) * (beta * s.powf(rho1)).ln_1p(),
            Bessel { rho } => -rho * s.ln_1p() - rho * s / (1.0 + s),
            Degenerate { c } => -c * s,
            _ => self.numeric_lt(s)?.ln(),
        })
    }

    /// E e^{-sξ} = ∫_0^1 exp(-s Q(u)) du through the closed-form quantile.
    fn numeric_lt(&self, s: f64) -> Result<f64> {
        let f = |u: f64| match self.quantile(u) {
            Some(q) if q.is_finite() => (-s * q).exp(),
            _ => 0.0,
        };
        integrate(f, 0.0, 1.0, &LT_TOL).into_result("numeric Laplace transform")
    }

    fn closed_lt_form(&self) -> bool {
        use LawKind::*;
        matches!(
            self.kind,
            Exponential { .. }
                | Gamma { .. }
                | PositiveStable { .. }
                | PositiveLinnik { .. }
                | GeneralizedLinnik { .. }
                | Bessel { .. }
                | Degenerate { .. }
        )
    }

    /// d/ds ln E e^{-sξ} when available in closed form.
    pub fn log_lt_derivative(&self, s: f64) -> Option<f64> {
        if !self.closed_lt_form() {
            return None;
        }
        Some(generic::dlog(self.kind, s))
    }

    /// ln E e^{-sξ} continued to Re s > 0, when available in closed form.
    pub fn log_lt_complex(&self, s: Complex64) -> Option<Complex64> {
        use LawKind::*;
        let one = Complex64::new(1.0, 0.0);
        Some(match self.kind {
            Exponential { beta } => -ln_1p(s / beta),
            Gamma { rho, beta } => -ln_1p(s / beta) * rho,
            PositiveStable { rho } => -s.powf(rho),
            PositiveLinnik { rho, beta } => -ln_1p(s.powf(rho) * beta),
            GeneralizedLinnik { rho, rho1, beta } => -ln_1p(s.powf(rho1) * beta) * (rho / rho1),
            Bessel { rho } => -ln_1p(s) * rho - (s / (one + s)) * rho,
            Degenerate { c } => -s * c,
            _ => return None,
        })
    }

    /// Complex continuation of [`log_lt_derivative`](Self::log_lt_derivative).
    pub fn log_lt_derivative_complex(&self, s: Complex64) -> Option<Complex64> {
        if !self.closed_lt_form() {
            return None;
        }
        Some(generic::dlog(self.kind, s))
    }

    // ---------------------------------------------------------- quantile

    /// Closed-form quantile function, when the catalog has one.
    pub fn quantile(&self, u: f64) -> Option<f64> {
        use LawKind::*;
        if !(0.0..=1.0).contains(&u) {
            return None;
        }
        let tail = 1.0 - u;
        Some(match self.kind {
            Exponential { beta } => -(-u).ln_1p() / beta,
            Burr { rho, beta1, beta2 } => {
                (beta1 * (tail.powf(-1.0 / beta2) - 1.0)).powf(1.0 / rho)
            }
            Weibull { rho, beta } => (-(-u).ln_1p() / beta).powf(1.0 / rho),
            HalfCauchy => (0.5 * PI * u).tan(),
            LogCauchy => (PI * (u - 0.5)).tan().exp(),
            Pareto { alpha } => tail.powf(-1.0 / alpha),
            LogPareto => (1.0 / tail).exp(),
            Degenerate { c } => c,
            _ => return None,
        })
    }

    /// Median, from the quantile function or by bisection on the CDF.
    pub fn median(&self) -> Result<f64> {
        if let Some(q) = self.quantile(0.5) {
            return Ok(q);
        }
        let mut hi = 1.0;
        while self.cdf(hi)? < 0.5 {
            hi *= 2.0;
        }
        let mut lo = hi / 2.0;
        while self.cdf(lo)? >= 0.5 && lo > 1e-300 {
            lo /= 2.0;
        }
        for _ in 0..80 {
            let mid = 0.5 * (lo + hi);
            if self.cdf(mid)? < 0.5 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-14 * hi {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    // --------------------------------------------------------- CDF / PDF

    pub fn cdf_method(&self) -> CdfMethod {
        use LawKind::*;
        match self.kind {
            Gamma { .. } | PositiveLinnik { .. } | Bessel { .. } => CdfMethod::SpecialFunction,
            GeneralizedLinnik { rho1, .. } if rho1 == 1.0 => CdfMethod::SpecialFunction,
            GeneralizedLinnik { .. } => CdfMethod::LtInversion,
            PositiveStable { .. } => CdfMethod::Quadrature,
            _ => CdfMethod::ClosedForm,
        }
    }

    /// P(ξ ≤ x).
    pub fn cdf(&self, x: f64) -> Result<f64> {
        use LawKind::*;
        if x.is_nan() {
            return Err(Error::Domain {
                function: "cdf",
                value: x,
                expected: "x not NaN",
            });
        }
        if x <= 0.0 {
            return Ok(match self.kind {
                Degenerate { c } if c == 0.0 && x == 0.0 => 1.0,
                _ => 0.0,
            });
        }
        if x.is_infinite() {
            return Ok(1.0);
        }
        Ok(match self.kind {
            Exponential { beta } => -(-beta * x).exp_m1(),
            Gamma { rho, beta } => incomplete(rho, beta * x).0,
            PositiveStable { rho } => stable::cdf(rho, x)?,
            PositiveLinnik { rho, beta } => {
                mittag_leffler_complement(rho, -x.powf(rho) / beta)?.value
            }
            GeneralizedLinnik { rho, rho1, beta } if rho1 == 1.0 => incomplete(rho, x / beta).0,
            GeneralizedLinnik { .. } => self.invert_cdf(x)?.clamp(0.0, 1.0),
            Bessel { rho } => bessel_mixture(rho, x, true),
            Burr { rho, beta1, beta2 } => -(-beta2 * (x.powf(rho) / beta1).ln_1p()).exp_m1(),
            Weibull { rho, beta } => -(-beta * x.powf(rho)).exp_m1(),
            HalfCauchy => FRAC_2_PI * x.atan(),
            LogCauchy => {
                let l = x.ln();
                if l < 0.0 {
                    (-1.0 / l).atan() / PI
                } else {
                    0.5 + l.atan() / PI
                }
            }
            Degenerate { c } => {
                if x >= c {
                    1.0
                } else {
                    0.0
                }
            }
            LogPareto => {
                if x <= core::f64::consts::E {
                    0.0
                } else {
                    1.0 - 1.0 / x.ln()
                }
            }
            Pareto { alpha } => {
                if x <= 1.0 {
                    0.0
                } else {
                    -(-alpha * x.ln()).exp_m1()
                }
            }
        })
    }

    /// P(ξ > x), computed without cancellation in the upper tail.
    pub fn sf(&self, x: f64) -> Result<f64> {
        use LawKind::*;
        if x.is_nan() {
            return Err(Error::Domain {
                function: "sf",
                value: x,
                expected: "x not NaN",
            });
        }
        if x < 0.0 {
            return Ok(1.0);
        }
        if x.is_infinite() {
            return Ok(0.0);
        }
        Ok(match self.kind {
            Exponential { beta } => (-beta * x).exp(),
            Gamma { rho, beta } => incomplete(rho, beta * x).1,
            PositiveStable { rho } => stable::sf(rho, x)?,
            PositiveLinnik { rho, beta } => mittag_leffler(rho, -x.powf(rho) / beta)?.value,
            GeneralizedLinnik { rho, rho1, beta } if rho1 == 1.0 => incomplete(rho, x / beta).1,
            Bessel { rho } => bessel_mixture(rho, x, false),
            Burr { rho, beta1, beta2 } => (-beta2 * (x.powf(rho) / beta1).ln_1p()).exp(),
            Weibull { rho, beta } => (-beta * x.powf(rho)).exp(),
            HalfCauchy => FRAC_2_PI * (1.0 / x).atan(),
            LogCauchy => {
                let l = x.ln();
                if l > 0.0 {
                    (1.0 / l).atan() / PI
                } else {
                    0.5 - l.atan() / PI
                }
            }
            Degenerate { c } => {
                if x < c {
                    1.0
                } else {
                    0.0
                }
            }
            LogPareto => {
                if x <= core::f64::consts::E {
                    1.0
                } else {
                    1.0 / x.ln()
                }
            }
            Pareto { alpha } => {
                if x <= 1.0 {
                    1.0
                } else {
                    x.powf(-alpha)
                }
            }
            GeneralizedLinnik { .. } => 1.0 - self.cdf(x)?,
        })
    }

    fn invert_cdf(&self, x: f64) -> Result<f64> {
        let law = *self;
        let r = euler_with_estimate(
            |s| law.log_lt_complex(s).map(|l| l.exp() / s).unwrap_or_default(),
            x,
        );
        Ok(r.value)
    }

    /// Density at x ≥ 0 (the value at 0 is the right limit, possibly +∞).
    pub fn pdf(&self, x: f64) -> Result<f64> {
        use LawKind::*;
        if !self.has_density() {
            return Err(Error::NoDensity { law: self.name() });
        }
        if !(x >= 0.0) {
            return Err(Error::Domain {
                function: "pdf",
                value: x,
                expected: "x ≥ 0",
            });
        }
        if x.is_infinite() {
            return Ok(0.0);
        }
        let gamma_pdf = |shape: f64, rate: f64| -> f64 {
            if x == 0.0 {
                return if shape < 1.0 {
                    f64::INFINITY
                } else if shape == 1.0 {
                    rate
                } else {
                    0.0
                };
            }
            (shape * rate.ln() + (shape - 1.0) * x.ln() - rate * x - ln_gamma_pos(shape)).exp()
        };
        let power_at_zero = |exponent: f64, coef: f64| -> f64 {
            // coef · x^exponent at x = 0
            if exponent < 0.0 {
                f64::INFINITY
            } else if exponent == 0.0 {
                coef
            } else {
                0.0
            }
        };
        Ok(match self.kind {
            Exponential { beta } => beta * (-beta * x).exp(),
            Gamma { rho, beta } => gamma_pdf(rho, beta),
            PositiveStable { rho } => stable::pdf(rho, x)?,
            PositiveLinnik { rho, beta } => {
                if rho == 1.0 {
                    (-x / beta).exp() / beta
                } else if x == 0.0 {
                    f64::INFINITY
                } else {
                    let d = mittag_leffler_derivative(rho, -x.powf(rho) / beta)?.value;
                    d * rho * x.powf(rho - 1.0) / beta
                }
            }
            GeneralizedLinnik { rho, rho1, beta } if rho1 == 1.0 => gamma_pdf(rho, 1.0 / beta),
            GeneralizedLinnik { rho, .. } => {
                if x == 0.0 {
                    power_at_zero(rho - 1.0, f64::NAN)
                } else {
                    let law = *self;
                    euler_with_estimate(
                        |s| law.log_lt_complex(s).map(|l| l.exp()).unwrap_or_default(),
                        x,
                    )
                    .value
                    .max(0.0)
                }
            }
            Bessel { rho } => {
                if x == 0.0 {
                    // Leading mixture term Poisson(0) · Gamma(ρ, 1).
                    (-rho).exp() * gamma_pdf(rho, 1.0)
                } else {
                    let arg = 2.0 * (rho * x).sqrt();
                    let i = bessel_i_scaled(rho - 1.0, arg)?.value;
                    (-rho - x + 0.5 * (rho - 1.0) * (x / rho).ln() + arg).exp() * i
                }
            }
            Burr { rho, beta1, beta2 } => {
                if x == 0.0 {
                    power_at_zero(rho - 1.0, beta2 * rho / beta1)
                } else {
                    let xr = x.powf(rho);
                    beta2 * rho * x.powf(rho - 1.0) / beta1
                        * (-(beta2 + 1.0) * (xr / beta1).ln_1p()).exp()
                }
            }
            Weibull { rho, beta } => {
                if x == 0.0 {
                    power_at_zero(rho - 1.0, beta * rho)
                } else {
                    beta * rho * x.powf(rho - 1.0) * (-beta * x.powf(rho)).exp()
                }
            }
            HalfCauchy => FRAC_2_PI / (1.0 + x * x),
            LogCauchy => {
                if x == 0.0 {
                    0.0
                } else {
                    let l = x.ln();
                    1.0 / (PI * x * (1.0 + l * l))
                }
            }
            Pareto { alpha } => {
                if x < 1.0 {
                    0.0
                } else {
                    alpha * x.powf(-alpha - 1.0)
                }
            }
            Degenerate { .. } | LogPareto => unreachable!(),
        })
    }

    // ---------------------------------------------------------- sampling

    /// One draw from the law.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        use LawKind::*;
        match self.kind {
            Exponential { beta } => Exp::new(beta).expect("validated rate").sample(rng),
            Gamma { rho, beta } => GammaDist::new(rho, 1.0 / beta).expect("validated").sample(rng),
            PositiveStable { rho } => stable::sample(rho, rng),
            PositiveLinnik { rho, beta } => {
                // Stable subordinator at an independent exponential time of mean β.
                let eps = Exp::new(1.0 / beta).expect("validated").sample(rng);
                if rho == 1.0 {
                    eps
                } else {
                    eps.powf(1.0 / rho) * stable::sample(rho, rng)
                }
            }
            GeneralizedLinnik { rho, rho1, beta } => {
                let g = GammaDist::new(rho / rho1, beta).expect("validated").sample(rng);
                if rho1 == 1.0 {
                    g
                } else {
                    g.powf(1.0 / rho1) * stable::sample(rho1, rng)
                }
            }
            Bessel { rho } => {
                let k: f64 = Poisson::new(rho).expect("validated").sample(rng);
                GammaDist::new(k + rho, 1.0).expect("positive shape").sample(rng)
            }
            Degenerate { c } => c,
            _ => {
                let u: f64 = Open01.sample(rng);
                self.quantile(u).expect("quantile-sampled kinds")
            }
        }
    }

    /// E min(1, cξ) for c ≥ 0.
    pub fn expected_min_one(&self, c: f64) -> Result<f64> {
        if !(c >= 0.0) {
            return Err(Error::Domain {
                function: "expected_min_one",
                value: c,
                expected: "c ≥ 0",
            });
        }
        if c == 0.0 {
            return Ok(0.0);
        }
        if c.is_infinite() {
            return Ok(self.sf(0.0)?);
        }
        match self.kind {
            LawKind::Degenerate { c: d } => return Ok((c * d).min(1.0)),
            LawKind::Exponential { beta } => return Ok(-c * (-beta / c).exp_m1() / beta),
            _ => {}
        }
        // c ∫_0^{1/c} P(ξ > y) dy
        let upper = 1.0 / c;
        let mut err = None;
        let mut f = |y: f64| match self.sf(y) {
            Ok(v) => v,
            Err(e) => {
                err = Some(e);
                0.0
            }
        };
        let mut points = vec![0.0];
        if let Some(a) = self.atom().filter(|&a| a > 0.0 && a < upper) {
            points.push(a);
        }
        points.push(upper);
        let r = integrate_breaks(&mut f, &points, &Tolerance::new(1e-14, 1e-10));
        if let Some(e) = err {
            return Err(e);
        }
        Ok(c * r.into_result("expected_min_one")?)
    }
}

mod generic {
    use super::LawKind;
    use num_complex::ComplexFloat;

    pub(super) fn dlog<T>(kind: LawKind, s: T) -> T
    where
        T: ComplexFloat<Real = f64> + From<f64>,
    {
        use LawKind::*;
        let k = |v: f64| <T as From<f64>>::from(v);
        match kind {
            Exponential { beta } => -(k(beta) + s).recip(),
            Gamma { rho, beta } => -k(rho) / (k(beta) + s),
            PositiveStable { rho } => -k(rho) * s.powf(rho - 1.0),
            PositiveLinnik { rho, beta } => {
                -k(beta * rho) * s.powf(rho - 1.0) / (k(1.0) + k(beta) * s.powf(rho))
            }
            GeneralizedLinnik { rho, rho1, beta } => {
                -k(rho * beta) * s.powf(rho1 - 1.0) / (k(1.0) + k(beta) * s.powf(rho1))
            }
            Bessel { rho } => {
                let inv = (k(1.0) + s).recip();
                -k(rho) * (inv + inv * inv)
            }
            Degenerate { c } => -k(c),
            _ => k(f64::NAN),
        }
    }
}

/// ln(1 + z) accurate for small |z|.
fn ln_1p(z: Complex64) -> Complex64 {
    if z.norm() < 1e-4 {
        z * (1.0 - z * (0.5 - z * (1.0 / 3.0 - z * 0.25)))
    } else {
        (Complex64::new(1.0, 0.0) + z).ln()
    }
}

/// Σ_k Poisson(k; ρ) · P or Q(k + ρ, x).
fn bessel_mixture(rho: f64, x: f64, lower: bool) -> f64 {
    let mut sum = 0.0;
    let mut log_w = -rho;
    let mut k = 0.0;
    let k_max = rho + 12.0 * rho.sqrt() + 40.0;
    while k <= k_max {
        let (p, q) = incomplete(k + rho, x);
        sum += log_w.exp() * if lower { p } else { q };
        k += 1.0;
        log_w += rho.ln() - k.ln();
    }
    sum
}

/// Γ(1 + ρ) / Γ(1 − ρ), the Linnik tail-ratio constant for β = 1.
pub fn linnik_ratio_constant(rho: f64) -> Result<f64> {
    Ok(gamma(1.0 + rho)?.value / gamma(1.0 - rho)?.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate_to_infinity, integrate_to_infinity_breaks};
    use crate::rng::stream;

    fn all_laws() -> Vec<NamedLaw> {
        vec![
            NamedLaw::exponential(1.5).unwrap(),
            NamedLaw::gamma(0.7, 2.0).unwrap(),
            NamedLaw::positive_stable(0.6).unwrap(),
            NamedLaw::positive_linnik(0.5, 1.0).unwrap(),
            NamedLaw::positive_linnik(1.0, 2.0).unwrap(),
            NamedLaw::generalized_linnik(1.5, 0.7, 1.0).unwrap(),
            NamedLaw::bessel(1.3).unwrap(),
            NamedLaw::burr(0.8, 1.0, 2.0).unwrap(),
            NamedLaw::weibull(0.5, 1.0).unwrap(),
            NamedLaw::half_cauchy(),
            NamedLaw::log_cauchy(),
            NamedLaw::degenerate(1.0).unwrap(),
            NamedLaw::log_pareto(),
            NamedLaw::pareto(0.5).unwrap(),
        ]
    }

    #[test]
    fn constructor_constraints() {
        assert!(NamedLaw::positive_linnik(1.2, 1.0).is_err());
        assert!(NamedLaw::positive_linnik(0.5, 0.0).is_err());
        assert!(NamedLaw::burr(1.0, 1.0, 0.5).is_err());
        assert!(NamedLaw::weibull(1.5, 1.0).is_err());
        assert!(NamedLaw::positive_stable(1.0).is_err());
        assert!(NamedLaw::generalized_linnik(2.0, 1.1, 1.0).is_err());
        assert!(NamedLaw::degenerate(-1.0).is_err());
        assert!(NamedLaw::gamma(f64::NAN, 1.0).is_err());
    }

    #[test]
    fn name_params_roundtrip() {
        for law in all_laws() {
            let params = law.params();
            let back = NamedLaw::from_name(law.name(), |k| {
                params.iter().find(|(n, _)| *n == k).map(|(_, v)| *v)
            })
            .unwrap();
            assert_eq!(back, law);
        }
        assert!(NamedLaw::from_name("gamma", |_| None).is_err());
        assert!(NamedLaw::from_name("nope", |_| Some(1.0)).is_err());
    }

    #[test]
    fn lt_examples() {
        let linnik = NamedLaw::positive_linnik(0.5, 1.0).unwrap();
        assert!((linnik.lt(4.0).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        let g = NamedLaw::gamma(2.0, 1.0).unwrap();
        assert!((g.lt(1.0).unwrap() - 0.25).abs() < 1e-15);
        for law in all_laws().into_iter().filter(|l| l.has_laplace_transform()) {
            assert_eq!(law.lt(0.0).unwrap(), 1.0, "{}", law.name());
        }
        assert!(matches!(
            NamedLaw::log_cauchy().lt(1.0),
            Err(Error::UnsupportedTransform { .. })
        ));
    }

    #[test]
    fn lt_nonincreasing_and_convex_on_grid() {
        for law in all_laws().into_iter().filter(|l| l.has_laplace_transform()) {
            let grid: Vec<f64> = (0..40).map(|i| 0.01 * 1.3f64.powi(i)).collect();
            let vals: Vec<f64> = grid.iter().map(|&s| law.lt(s).unwrap()).collect();
            for w in vals.windows(2) {
                assert!(w[1] <= w[0] + 1e-13, "{}", law.name());
            }
            for i in 1..grid.len() - 1 {
                // convexity on a non-uniform grid
                let (x0, x1, x2) = (grid[i - 1], grid[i], grid[i + 1]);
                let interp = vals[i - 1] + (vals[i + 1] - vals[i - 1]) * (x1 - x0) / (x2 - x0);
                assert!(vals[i] <= interp + 1e-12, "{} at {x1}", law.name());
            }
        }
    }

    #[test]
    fn closed_form_derivative_matches_finite_difference() {
        for law in all_laws().into_iter().filter(|l| l.closed_lt_form()) {
            if law.atom() == Some(1.0) {
                continue;
            }
            for &s in &[0.01, 0.3, 2.0, 50.0] {
                let h = 1e-5 * s;
                let fd = (law.log_lt(s + h).unwrap() - law.log_lt(s - h).unwrap()) / (2.0 * h);
                let an = law.log_lt_derivative(s).unwrap();
                assert!((fd - an).abs() < 1e-6 * an.abs().max(1.0), "{} s={s}", law.name());
                let c = law.log_lt_complex(Complex64::new(s, 0.0)).unwrap();
                assert!((c.re - law.log_lt(s).unwrap()).abs() < 1e-12 * c.re.abs().max(1.0));
            }
        }
    }

    #[test]
    fn cdf_examples() {
        let beta = 2.0;
        let l = NamedLaw::positive_linnik(1.0, beta).unwrap();
        for &x in &[0.1, 1.0, 5.0] {
            assert!((l.cdf(x).unwrap() - (1.0 - (-x / beta).exp())).abs() < 1e-15);
        }
        assert!((NamedLaw::half_cauchy().cdf(1.0).unwrap() - 0.5).abs() < 1e-15);
        let burr = NamedLaw::burr(1.0, 1.0, 2.0).unwrap();
        assert!((burr.cdf(1.0).unwrap() - 0.75).abs() < 1e-15);
    }

    #[test]
    fn linnik_cdf_matches_raw_alternating_series_for_small_x() {
        // 120-term partial sum of 1 - Σ (-β)^{-k} x^{ρk} / Γ(1 + ρk)
        let (rho, beta) = (0.5, 1.0);
        let law = NamedLaw::positive_linnik(rho, beta).unwrap();
        for &x in &[0.01, 0.1, 0.5, 1.0, 2.0, 4.0, 9.0] {
            let mut sum = 0.0;
            for k in 0..120 {
                let kf = k as f64;
                let g = gamma(1.0 + rho * kf).unwrap().value;
                sum += (-1.0 / beta).powi(k) * x.powf(rho * kf) / g;
            }
            let oracle = 1.0 - sum;
            assert!((law.cdf(x).unwrap() - oracle).abs() < 1e-9, "x={x}");
        }
    }

    #[test]
    fn cdf_is_monotone_with_proper_limits() {
        for law in all_laws() {
            let mut prev = law.cdf(0.0).unwrap();
            assert!(prev == 0.0 || law.atom() == Some(0.0));
            for i in 0..60 {
                let x = 1e-4 * 1.5f64.powi(i);
                let v = law.cdf(x).unwrap();
                assert!((0.0..=1.0).contains(&v), "{} {x} {v}", law.name());
                assert!(v >= prev - 1e-9, "{} at {x}: {v} < {prev}", law.name());
                let s = law.sf(x).unwrap();
                assert!((v + s - 1.0).abs() < 1e-8, "{} at {x}", law.name());
                prev = v;
            }
            assert_eq!(law.cdf(f64::INFINITY).unwrap(), 1.0);
        }
    }

    #[test]
    fn pdf_examples() {
        let hc = NamedLaw::half_cauchy();
        assert!((hc.pdf(0.0).unwrap() - 0.636_619_772_367_581_3).abs() < 1e-15);
        let e = NamedLaw::gamma(1.0, 1.0).unwrap();
        for &x in &[0.1, 1.0, 3.0] {
            assert!((e.pdf(x).unwrap() - (-x).exp()).abs() < 1e-15);
        }
        // e^{-2} I_0(2), I_0 from its power series Σ 1/(k!)²
        let i0: f64 = (0..30).map(|k| 1.0 / gamma(k as f64 + 1.0).unwrap().value.powi(2)).sum();
        let b = NamedLaw::bessel(1.0).unwrap();
        assert!((b.pdf(1.0).unwrap() - (-2.0f64).exp() * i0).abs() < 1e-12);
        assert!((b.pdf(1.0).unwrap() - 0.308_508_3).abs() < 1e-7);
        assert!(matches!(
            NamedLaw::degenerate(1.0).unwrap().pdf(1.0),
            Err(Error::NoDensity { .. })
        ));
        assert!(NamedLaw::log_pareto().pdf(3.0).is_err());
    }

    #[test]
    fn pdf_integrates_to_cdf() {
        let tol = Tolerance::new(1e-11, 1e-10);
        for law in all_laws().into_iter().filter(|l| l.has_density()) {
            // log_cauchy has mass ~ 1/|ln x| near zero, beyond plain quadrature
            let start = match law.kind() {
                LawKind::Pareto { .. } => 1.0,
                LawKind::LogCauchy => 0.05,
                _ => 0.0,
            };
            let mut prev_x = start;
            let mut acc = law.cdf(start).unwrap();
            for i in 1..=40 {
                let x = start + 0.25 * i as f64;
                acc += integrate(|y| law.pdf(y).unwrap_or(0.0), prev_x, x, &tol).value;
                assert!((acc - law.cdf(x).unwrap()).abs() < 1e-7, "{} at {x}", law.name());
                prev_x = x;
            }
        }
    }

    #[test]
    fn light_tailed_pdf_has_unit_mass() {
        let tol = Tolerance::new(1e-12, 1e-10);
        for law in all_laws().into_iter().filter(|l| l.has_density() && l.moment_index() > 1.0) {
            let total = integrate_to_infinity_breaks(|x| law.pdf(x).unwrap_or(0.0), &[0.0, 1.0], &tol);
            assert!((total.value - 1.0).abs() < 1e-8, "{}: {}", law.name(), total.value);
        }
    }

    #[test]
    fn bessel_generating_jumps_by_lt_identity() {
        // SN law with gamma(2,1) jumps has LT exp(-ρ ∫_0^s (1 - (1+u)^{-2}) du/u).
        let rho = 1.3;
        let law = NamedLaw::bessel(rho).unwrap();
        for &s in &[0.1, 1.0, 10.0] {
            let int = integrate(|u: f64| (1.0 - (1.0 + u).powi(-2)) / u, 0.0, s, &LT_TOL).value;
            assert!((law.log_lt(s).unwrap() + rho * int).abs() < 1e-12);
        }
    }

    #[test]
    fn numeric_lt_against_direct_integral() {
        let law = NamedLaw::weibull(0.5, 1.0).unwrap();
        let direct = integrate_to_infinity(
            |x: f64| (-2.0 * x).exp() * law.pdf(x).unwrap(),
            0.0,
            &Tolerance::new(1e-12, 1e-12),
        );
        assert!((law.lt(2.0).unwrap() - direct.value).abs() < 1e-9);
    }

    #[test]
    fn degenerate_always_returns_c() {
        let mut rng = stream(1, 0);
        let law = NamedLaw::degenerate(2.5).unwrap();
        assert!((0..100).all(|_| law.sample(&mut rng) == 2.5));
    }

    #[test]
    fn moment_indices() {
        assert!(NamedLaw::log_pareto().moment_index() == 0.0);
        assert!(!NamedLaw::log_pareto().log_moment_finite());
        assert!(!NamedLaw::log_cauchy().log_moment_finite());
        assert!(NamedLaw::gamma(2.0, 1.0).unwrap().log_moment_finite());
        assert!(!NamedLaw::pareto(0.5).unwrap().moment_finite(0.5));
        assert!(NamedLaw::exponential(1.0).unwrap().moment_finite(0.5));
    }

    #[test]
    fn expected_min_one_closed_forms() {
        let e = NamedLaw::exponential(2.0).unwrap();
        let g = NamedLaw::gamma(1.0, 2.0).unwrap();
        for &c in &[0.01, 0.5, 3.0, 100.0] {
            let a = e.expected_min_one(c).unwrap();
            let b = g.expected_min_one(c).unwrap();
            assert!((a - b).abs() < 1e-9, "c={c}: {a} vs {b}");
        }
        let d = NamedLaw::degenerate(1.0).unwrap();
        assert_eq!(d.expected_min_one(0.5).unwrap(), 0.5);
        assert_eq!(d.expected_min_one(5.0).unwrap(), 1.0);
    }

    #[test]
    fn tail_ratio_constant() {
        assert!((linnik_ratio_constant(0.5).unwrap() - 0.5).abs() < 1e-14);
    }
}
