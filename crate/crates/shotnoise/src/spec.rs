//! JSON schema of experiment specs and its conversion to core types.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use shotnoise_core::transform::{bdlp_from_sd, jump_lt_from_sn, sd_from_bdlp, sn_lt_from_jumps, subordinate};
use shotnoise_core::{LaplaceTransform, NamedLaw, ResponseFunction, ShotNoiseModel};

use crate::error::CliError;

/// A catalog law: `{"kind": "gamma", "params": {"rho": 2, "beta": 1}}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LawSpec {
    pub kind: String,
    #[serde(default)]
    pub params: BTreeMap<String, f64>,
}

impl LawSpec {
    pub fn to_law(&self) -> Result<NamedLaw, CliError> {
        let law = NamedLaw::from_name(&self.kind, |k| self.params.get(k).copied())?;
        let known: Vec<&str> = law.params().iter().map(|p| p.0).collect();
        if let Some(extra) = self.params.keys().find(|k| !known.contains(&k.as_str())) {
            return Err(CliError::Schema(format!(
                "unknown parameter `{extra}` for law `{}`",
                self.kind
            )));
        }
        Ok(law)
    }
}

impl From<&NamedLaw> for LawSpec {
    fn from(law: &NamedLaw) -> Self {
        Self {
            kind: law.name().to_string(),
            params: law.params().into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ResponseSpec {
    Exponential { omega: f64 },
    Power { alpha: f64 },
    Indicator { a: f64, b: f64 },
    Tabulated { points: Vec<(f64, f64)> },
}

impl ResponseSpec {
    pub fn to_response(&self) -> Result<ResponseFunction, CliError> {
        Ok(match self {
            Self::Exponential { omega } => ResponseFunction::exponential(*omega)?,
            Self::Power { alpha } => ResponseFunction::power(*alpha)?,
            Self::Indicator { a, b } => ResponseFunction::indicator(*a, *b)?,
            Self::Tabulated { points } => ResponseFunction::tabulated(points.clone())?,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub intensity: f64,
    pub jumps: LawSpec,
    pub response: ResponseSpec,
    #[serde(default)]
    pub x0: f64,
}

impl ModelSpec {
    pub fn to_model(&self) -> Result<ShotNoiseModel, CliError> {
        Ok(ShotNoiseModel::new(self.intensity, self.jumps.to_law()?, self.response.to_response()?)?
            .with_x0(self.x0)?)
    }
}

/// A transform expression built from catalog laws.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum TransformSpec {
    Law { law: LawSpec },
    /// Stationary shot-noise transform generated by `jumps` at ρ = λ/ω.
    ShotNoise { jumps: Box<TransformSpec>, rho: f64 },
    SdFromBdlp { psi: Box<TransformSpec> },
    BdlpFromSd { phi: Box<TransformSpec> },
    JumpsFromShotNoise { phi: Box<TransformSpec>, rho: f64 },
    /// Φ_outer(−ln Φ_inner(s)).
    Subordinate { inner: Box<TransformSpec>, outer: Box<TransformSpec> },
    Product { parts: Vec<TransformSpec> },
    CompoundPoisson { rate: f64, jumps: Box<TransformSpec> },
    Scaled { inner: Box<TransformSpec>, c: f64 },
}

impl TransformSpec {
    pub fn build(&self) -> Result<LaplaceTransform, CliError> {
        Ok(match self {
            Self::Law { law } => LaplaceTransform::from_law(law.to_law()?)?,
            Self::ShotNoise { jumps, rho } => sn_lt_from_jumps(&jumps.build()?, *rho)?,
            Self::SdFromBdlp { psi } => sd_from_bdlp(&psi.build()?)?,
            Self::BdlpFromSd { phi } => bdlp_from_sd(&phi.build()?)?.psi,
            Self::JumpsFromShotNoise { phi, rho } => jump_lt_from_sn(&phi.build()?, *rho)?,
            Self::Subordinate { inner, outer } => subordinate(&inner.build()?, &outer.build()?),
            Self::Product { parts } => {
                LaplaceTransform::product(parts.iter().map(|p| p.build()).collect::<Result<_, _>>()?)
            }
            Self::CompoundPoisson { rate, jumps } => LaplaceTransform::compound_poisson(*rate, jumps.build()?)?,
            Self::Scaled { inner, c } => inner.build()?.scaled(*c)?,
        })
    }
}

/// Log-spaced evaluation grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    pub from: f64,
    pub to: f64,
    pub points: usize,
}

impl GridSpec {
    pub fn values(&self) -> Result<Vec<f64>, CliError> {
        if !(self.from > 0.0 && self.to > self.from && self.to.is_finite() && self.points >= 2) {
            return Err(CliError::Schema(format!(
                "grid needs 0 < from < to < ∞ and points ≥ 2, got {self:?}"
            )));
        }
        Ok(shotnoise_core::transform::log_grid(self.from, self.to, self.points))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Sample,
    Transform,
    IdentifyBdlp,
    IdentifyJumps,
    Diagnose,
    Verify,
    Invert,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleMode {
    /// X(∞) of the exponential-response process.
    #[default]
    Stationary,
    /// Σ ξ_k h(τ_k) for any response.
    Series,
    /// One transient path on [0, t_max].
    Path,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

pub const DEFAULT_TOL: f64 = 1e-8;

fn default_n() -> usize {
    1000
}

fn default_tol() -> f64 {
    DEFAULT_TOL
}

/// One experiment. Which of the optional inputs are required depends on the
/// command; [`crate::run`] reports missing ones as schema errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    #[serde(alias = "operation")]
    pub command: Command,
    #[serde(default)]
    pub model: Option<ModelSpec>,
    #[serde(default)]
    pub law: Option<LawSpec>,
    #[serde(default)]
    pub transform: Option<TransformSpec>,
    /// Sample set for `diagnose`.
    #[serde(default)]
    pub samples: Option<Vec<f64>>,
    #[serde(default = "default_n")]
    pub n: usize,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub mode: SampleMode,
    #[serde(default)]
    pub t_max: Option<f64>,
    /// Grid of s values for transform tables.
    #[serde(default)]
    pub grid: Option<GridSpec>,
    /// Points x for `invert`.
    #[serde(default)]
    pub x: Option<Vec<f64>>,
    /// ρ = λ/ω for `identify-jumps`.
    #[serde(default)]
    pub rho: Option<f64>,
    #[serde(default)]
    pub scenario: Option<String>,
    #[serde(default)]
    pub format: Option<Format>,
    #[serde(default)]
    pub output: Option<String>,
}

impl ExperimentSpec {
    pub fn new(command: Command) -> Self {
        Self {
            command,
            model: None,
            law: None,
            transform: None,
            samples: None,
            n: default_n(),
            tol: default_tol(),
            seed: 0,
            mode: SampleMode::default(),
            t_max: None,
            grid: None,
            x: None,
            rho: None,
            scenario: None,
            format: None,
            output: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let spec: Self = serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.n == 0 {
            return Err(CliError::Schema("n must be at least 1".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(CliError::Schema(format!("tol = {} must be positive", self.tol)));
        }
        Ok(())
    }
}
