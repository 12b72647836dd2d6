//! Deterministic response functions h ≥ 0 on [0, ∞).

use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum ResponseFunction {
    /// h(s) = e^{−ωs}.
    Exponential { omega: f64 },
    /// h(s) = s^{−α}, α > 1.
    Power { alpha: f64 },
    /// h = 1 on [a, b), 0 elsewhere.
    Indicator { a: f64, b: f64 },
    /// Linear interpolation between (s, h) points, zero outside the grid.
    Tabulated { points: Vec<(f64, f64)> },
}

fn invalid(context: &'static str, reason: alloc::string::String) -> Error {
    Error::InvalidParameter { context, reason }
}

impl ResponseFunction {
    pub fn exponential(omega: f64) -> Result<Self> {
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(invalid("exponential response", alloc::format!("omega = {omega} must be positive")));
        }
        Ok(Self::Exponential { omega })
    }

    pub fn power(alpha: f64) -> Result<Self> {
        if !(alpha > 1.0 && alpha.is_finite()) {
            return Err(invalid("power response", alloc::format!("alpha = {alpha} must exceed 1")));
        }
        Ok(Self::Power { alpha })
    }

    pub fn indicator(a: f64, b: f64) -> Result<Self> {
        if !(a >= 0.0 && b > a && b.is_finite()) {
            return Err(invalid("indicator response", alloc::format!("need 0 ≤ a < b < ∞, got a = {a}, b = {b}")));
        }
        Ok(Self::Indicator { a, b })
    }

    pub fn tabulated(points: Vec<(f64, f64)>) -> Result<Self> {
        if points.len() < 2 {
            return Err(invalid("tabulated response", "need at least two points".into()));
        }
        if points.iter().any(|&(s, h)| !(s >= 0.0 && s.is_finite() && h >= 0.0 && h.is_finite())) {
            return Err(invalid(
                "tabulated response",
                "grid must be nonnegative and values finite and nonnegative".into(),
            ));
        }
        if points.windows(2).any(|w| !(w[1].0 > w[0].0)) {
            return Err(invalid("tabulated response", "grid must be strictly increasing".into()));
        }
        Ok(Self::Tabulated { points })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Exponential { .. } => "exponential",
            Self::Power { .. } => "power",
            Self::Indicator { .. } => "indicator",
            Self::Tabulated { .. } => "tabulated",
        }
    }

    /// h(s) for s ≥ 0 (h(0) = ∞ for the power response).
    pub fn eval(&self, s: f64) -> f64 {
        match self {
            Self::Exponential { omega } => (-omega * s).exp(),
            Self::Power { alpha } => s.powf(-alpha),
            Self::Indicator { a, b } => {
                if s >= *a && s < *b {
                    1.0
                } else {
                    0.0
                }
            }
            Self::Tabulated { points } => {
                let first = points[0].0;
                let last = points[points.len() - 1].0;
                if s < first || s > last {
                    return 0.0;
                }
                let i = points.partition_point(|p| p.0 <= s).clamp(1, points.len() - 1);
                let (s0, h0) = points[i - 1];
                let (s1, h1) = points[i];
                h0 + (h1 - h0) * (s - s0) / (s1 - s0)
            }
        }
    }

    /// End of the support, when h vanishes beyond a finite time.
    pub fn support_end(&self) -> Option<f64> {
        match self {
            Self::Indicator { b, .. } => Some(*b),
            Self::Tabulated { points } => Some(points[points.len() - 1].0),
            _ => None,
        }
    }

    /// Points where h or its derivative jumps, for quadrature.
    pub fn break_points(&self) -> Vec<f64> {
        match self {
            Self::Indicator { a, b } => alloc::vec![*a, *b],
            Self::Tabulated { points } => points.iter().map(|p| p.0).collect(),
            _ => Vec::new(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_validate() {
        assert!(ResponseFunction::exponential(0.0).is_err());
        assert!(ResponseFunction::power(1.0).is_err());
        assert!(ResponseFunction::indicator(1.0, 1.0).is_err());
        assert!(ResponseFunction::tabulated(alloc::vec![(0.0, 1.0), (0.0, 2.0)]).is_err());
        assert!(ResponseFunction::tabulated(alloc::vec![(0.0, 1.0), (1.0, -2.0)]).is_err());
    }

    #[test]
    fn evaluation() {
        let e = ResponseFunction::exponential(2.0).unwrap();
        assert_eq!(e.eval(0.0), 1.0);
        assert!((e.eval(1.0) - (-2.0f64).exp()).abs() < 1e-16);
        let p = ResponseFunction::power(2.0).unwrap();
        assert_eq!(p.eval(2.0), 0.25);
        let i = ResponseFunction::indicator(0.0, 1.0).unwrap();
        assert_eq!((i.eval(0.0), i.eval(0.999), i.eval(1.0)), (1.0, 1.0, 0.0));
        let t = ResponseFunction::tabulated(alloc::vec![(1.0, 2.0), (2.0, 0.0), (4.0, 1.0)]).unwrap();
        assert_eq!(t.eval(0.5), 0.0);
        assert_eq!(t.eval(1.5), 1.0);
        assert_eq!(t.eval(3.0), 0.5);
        assert_eq!(t.eval(4.0), 1.0);
        assert_eq!(t.eval(4.1), 0.0);
        assert_eq!(t.support_end(), Some(4.0));
    }
}
