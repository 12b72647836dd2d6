//! Built-in registry of reproducible check scenarios.

use rand::Rng;
use serde_json::{json, Map, Value};
use shotnoise_core::diagnostics::{
    classify_law, classify_transform, ks_band_99, ks_distance, ks_two_sample, ks_two_sample_band_99,
    rv_index_from_samples, Verdict,
};
use shotnoise_core::quad::{integrate, Tolerance};
use shotnoise_core::rng::stream;
use shotnoise_core::transform::{
    bdlp_from_sd, invert_lt, jump_lt_from_sn, log_grid, sd_from_bdlp, sn_lt_from_jumps, subordinate,
};
use shotnoise_core::{
    existence_check, linnik_tail_ratio, ConvergenceStatus, LaplaceTransform, NamedLaw, ResponseFunction,
    ShotNoiseModel,
};

use crate::error::CliError;
use crate::output::{num, Artifact, Table};
use crate::run::parallel_series;

const N: usize = 100_000;

/// Stream ids above every chunk index `parallel_series` can use.
const AUX_STREAM: u64 = 1 << 40;

type Check = fn(u64) -> Result<Stats, CliError>;

/// Measured statistics and whether the scenario passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Stats {
    pub pass: bool,
    pub values: Vec<(String, f64)>,
}

impl Stats {
    fn new() -> Self {
        Self {
            pass: true,
            values: Vec::new(),
        }
    }

    fn record(&mut self, name: impl Into<String>, value: f64) {
        self.values.push((name.into(), value));
    }

    /// Records `value` and its bound; fails unless value < bound.
    fn below(&mut self, name: &str, value: f64, bound: f64) {
        self.record(name, value);
        self.record(format!("{name}_bound"), bound);
        self.pass &= value < bound;
    }

    fn require(&mut self, name: &str, ok: bool) {
        self.record(name, if ok { 1.0 } else { 0.0 });
        self.pass &= ok;
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Scenario {
    pub name: &'static str,
    /// Short description of the property being reproduced.
    pub anchor: &'static str,
    check: Check,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub name: &'static str,
    pub anchor: &'static str,
    pub seed: u64,
    pub stats: Stats,
}

impl Outcome {
    pub fn pass(&self) -> bool {
        self.stats.pass
    }

    pub fn artifact(&self) -> Artifact {
        let mut table = Table::new(&["scenario", "statistic", "value"]);
        table.push(vec![self.name.into(), "pass".into(), (self.pass() as usize).into()]);
        let mut stats = Map::new();
        for (k, v) in &self.stats.values {
            table.push(vec![self.name.into(), k.as_str().into(), (*v).into()]);
            stats.insert(k.clone(), num(*v));
        }
        Artifact {
            table,
            json: json!({
                "scenario": self.name,
                "anchor": self.anchor,
                "seed": self.seed,
                "pass": self.pass(),
                "statistics": Value::Object(stats),
            }),
        }
    }
}

pub const SCENARIOS: &[Scenario] = &[
    Scenario {
        name: "gamma-sn",
        anchor: "exponential jumps at rate ratio 2 give the Gamma(2, 1) law",
        check: gamma_sn,
    },
    Scenario {
        name: "bdlp-roundtrip",
        anchor: "selfdecomposable transform to BDLP transform and back",
        check: bdlp_roundtrip,
    },
    Scenario {
        name: "linnik-self-generation",
        anchor: "Linnik(1/2, 1) law is generated by Linnik(1/2, 1) jumps",
        check: linnik_self_generation,
    },
    Scenario {
        name: "generalized-linnik-chain",
        anchor: "Linnik jumps generate the generalized Linnik law",
        check: generalized_linnik_chain,
    },
    Scenario {
        name: "bessel-consistency",
        anchor: "Bessel law from Gamma(2, 1) jumps; inverted transform matches the density",
        check: bessel_consistency,
    },
    Scenario {
        name: "burr-index",
        anchor: "Burr law is shot noise with index at zero equal to rho",
        check: burr_index,
    },
    Scenario {
        name: "weibull-index",
        anchor: "Weibull law with rho <= 1 is shot noise with index rho",
        check: weibull_index,
    },
    Scenario {
        name: "half-cauchy-index",
        anchor: "half-Cauchy law is shot noise with index 1",
        check: half_cauchy_index,
    },
    Scenario {
        name: "log-cauchy-not-sd",
        anchor: "log-Cauchy law is slowly varying at zero, hence not selfdecomposable",
        check: log_cauchy_not_sd,
    },
    Scenario {
        name: "stable-ratio",
        anchor: "ratio of independent 1/2-stable draws has CDF (2/pi) arctan sqrt(x)",
        check: stable_ratio,
    },
    Scenario {
        name: "subordinated-gamma",
        anchor: "gamma process subordinated to a gamma process is not selfdecomposable",
        check: subordinated_gamma,
    },
    Scenario {
        name: "linnik-tail-ratio",
        anchor: "Linnik tail-to-origin ratio tends to beta^2 Gamma(1+rho)/Gamma(1-rho)",
        check: linnik_tail,
    },
    Scenario {
        name: "fixed-point",
        anchor: "X =d R^(omega/lambda) (X + xi) for the stationary law",
        check: fixed_point,
    },
    Scenario {
        name: "mode-at-zero",
        anchor: "stationary density with rate ratio <= 1 has its mode at zero",
        check: mode_at_zero,
    },
    Scenario {
        name: "existence-criteria",
        anchor: "series existence for exponential, power and indicator responses",
        check: existence_criteria,
    },
    Scenario {
        name: "index-recovery",
        anchor: "index at zero of stationary samples equals lambda/omega",
        check: index_recovery,
    },
];

pub fn find(name: &str) -> Option<&'static Scenario> {
    SCENARIOS.iter().find(|s| s.name == name)
}

pub fn run_scenario(name: &str, seed: u64) -> Result<Outcome, CliError> {
    let scenario = find(name).ok_or_else(|| {
        let known: Vec<&str> = SCENARIOS.iter().map(|s| s.name).collect();
        CliError::Schema(format!("unknown scenario `{name}`; known: {}", known.join(", ")))
    })?;
    Ok(Outcome {
        name: scenario.name,
        anchor: scenario.anchor,
        seed,
        stats: (scenario.check)(seed)?,
    })
}

// ----------------------------------------------------------------- helpers

fn lt(law: NamedLaw) -> Result<LaplaceTransform, CliError> {
    Ok(LaplaceTransform::from_law(law)?)
}

fn stationary(rho: f64, jumps: NamedLaw) -> Result<ShotNoiseModel, CliError> {
    Ok(ShotNoiseModel::new(rho, jumps, ResponseFunction::exponential(1.0)?)?)
}

fn exp1() -> NamedLaw {
    NamedLaw::exponential(1.0).expect("valid")
}

fn max_abs_diff(
    a: &LaplaceTransform,
    b: impl Fn(f64) -> Result<f64, CliError>,
    grid: &[f64],
) -> Result<f64, CliError> {
    let mut worst: f64 = 0.0;
    for &s in grid {
        worst = worst.max((a.eval(s)? - b(s)?).abs());
    }
    Ok(worst)
}

fn index_check(law: NamedLaw, rho: f64) -> Result<Stats, CliError> {
    let mut st = Stats::new();
    let report = classify_law(&law);
    st.record("index", report.index);
    st.record("ci_lo", report.ci.0);
    st.record("ci_hi", report.ci.1);
    st.require("verdict_shot_noise", matches!(report.verdict, Verdict::ShotNoise { .. }));
    st.below("relative_error", (report.index - rho).abs() / rho, 0.05);
    Ok(st)
}

// --------------------------------------------------------------- scenarios

fn gamma_sn(seed: u64) -> Result<Stats, CliError> {
    let mut st = Stats::new();
    let xs = parallel_series(&stationary(2.0, exp1())?, N, 1e-4, seed)?;
    let target = NamedLaw::gamma(2.0, 1.0)?;
    let d = ks_distance(&xs, |x| target.cdf(x).unwrap_or(f64::NAN));
    st.below("ks", d, ks_band_99(N));
    Ok(st)
}

fn bdlp_roundtrip(_: u64) -> Result<Stats, CliError> {
    let mut st = Stats::new();
    let grid = log_grid(0.01, 100.0, 40);
    for (name, law) in [
        ("gamma", NamedLaw::gamma(2.0, 1.0)?),
        ("linnik", NamedLaw::positive_linnik(0.5, 1.0)?),
    ] {
        let phi = lt(law)?;
        let back = sd_from_bdlp(&bdlp_from_sd(&phi)?.psi)?;
        st.below(name, max_abs_diff(&back, |s| Ok(phi.eval(s)?), &grid)?, 1e-6);
    }
    Ok(st)
}

fn linnik_self_generation(_: u64) -> Result<Stats, CliError> {
    let mut st = Stats::new();
    let phi = lt(NamedLaw::positive_linnik(0.5, 1.0)?)?;
    let g = jump_lt_from_sn(&phi, 0.5)?;
    st.below("max_abs_error", max_abs_diff(&g, |s| Ok(phi.eval(s)?), &log_grid(0.01, 100.0, 20))?, 1e-6);
    Ok(st)
}

fn generalized_linnik_chain(_: u64) -> Result<Stats, CliError> {
    let mut st = Stats::new();
    let (rho, rho1, beta) = (1.2, 0.7, 1.5);
    let phi = sn_lt_from_jumps(&lt(NamedLaw::positive_linnik(rho1, beta)?)?, rho)?;
    let target = lt(NamedLaw::generalized_linnik(rho, rho1, beta)?)?;
    let err = max_abs_diff(&phi, |s| Ok(target.eval(s)?), &log_grid(0.01, 100.0, 40))?;
    st.below("max_abs_error", err, 1e-6);
    Ok(st)
}

fn bessel_consistency(_: u64) -> Result<Stats, CliError> {
    let mut st = Stats::new();
    let rho = 1.0;
    let bessel = lt(NamedLaw::bessel(rho)?)?;
    let generated = sn_lt_from_jumps(&lt(NamedLaw::gamma(2.0, 1.0)?)?, rho)?;
    let err = max_abs_diff(&generated, |s| Ok(bessel.eval(s)?), &log_grid(0.01, 100.0, 40))?;
    st.below("generation_error", err, 1e-6);
    let law = NamedLaw::bessel(rho)?;
    let tol = Tolerance::new(1e-12, 1e-12);
    let mut worst: f64 = 0.0;
    for x in log_grid(0.1, 10.0, 20) {
        let want = integrate(|t| law.pdf(t).unwrap_or(f64::NAN), 0.0, x, &tol).into_result("bessel pdf")?;
        worst = worst.max((invert_lt(&bessel, x)?.value - want).abs());
    }
    st.below("inversion_error", worst, 1e-4);
    Ok(st)
}

fn burr_index(_: u64) -> Result<Stats, CliError> {
    index_check(NamedLaw::burr(0.7, 1.0, 2.0)?, 0.7)
}

fn weibull_index(_: u64) -> Result<Stats, CliError> {
    index_check(NamedLaw::weibull(0.5, 1.0)?, 0.5)
}

fn half_cauchy_index(_: u64) -> Result<Stats, CliError> {
    index_check(NamedLaw::half_cauchy(), 1.0)
}

fn log_cauchy_not_sd(_: u64) -> Result<Stats, CliError> {
    let mut st = Stats::new();
    let report = classify_law(&NamedLaw::log_cauchy());
    st.record("index", report.index);
    st.record("ci_hi", report.ci.1);
    st.require("verdict_not_sd", report.verdict == Verdict::NotSdSlowVariation);
    Ok(st)
}

fn stable_ratio(seed: u64) -> Result<Stats, CliError> {
    let mut st = Stats::new();
    let law = NamedLaw::positive_stable(0.5)?;
    let mut rng = stream(seed, 0);
    let xs: Vec<f64> = (0..N).map(|_| law.sample(&mut rng) / law.sample(&mut rng)).collect();
    let d = ks_distance(&xs, |x| std::f64::consts::FRAC_2_PI * x.sqrt().atan());
    st.below("ks", d, ks_band_99(N));
    Ok(st)
}

fn subordinated_gamma(_: u64) -> Result<Stats, CliError> {
    let mut st = Stats::new();
    let g = lt(NamedLaw::gamma(1.0, 1.0)?)?;
    let phi3 = subordinate(&g, &g);
    st.below("local_index_1e6", phi3.local_index(1e6)?, 0.1);
    st.require(
        "verdict_not_sd",
        classify_transform(&phi3).verdict == Verdict::NotSdSlowVariation,
    );
    Ok(st)
}

fn linnik_tail(_: u64) -> Result<Stats, CliError> {
    let mut st = Stats::new();
    let limit = shotnoise_core::law::linnik_ratio_constant(0.5)?;
    for beta in [1.0, 2.0] {
        let want = beta * beta * limit;
        let r = linnik_tail_ratio(0.5, beta, 1e4)?;
        st.record(format!("ratio_beta_{beta}"), r);
        st.below(&format!("relative_error_beta_{beta}"), (r - want).abs() / want, 0.1);
    }
    Ok(st)
}

fn fixed_point(seed: u64) -> Result<Stats, CliError> {
    let mut st = Stats::new();
    let xi = exp1();
    for (i, rho) in [0.5, 1.0, 2.0].into_iter().enumerate() {
        let model = stationary(rho, xi)?;
        let s = seed.wrapping_add(i as u64);
        let xs = parallel_series(&model, 2 * N, 1e-10, s)?;
        let (a, b) = xs.split_at(N);
        let mut rng = stream(s, AUX_STREAM);
        let mapped: Vec<f64> = b
            .iter()
            .map(|x| {
                let r: f64 = rng.random();
                r.powf(1.0 / rho) * (x + xi.sample(&mut rng))
            })
            .collect();
        st.below(&format!("ks_rho_{rho}"), ks_two_sample(a, &mapped), ks_two_sample_band_99(N, N));
    }
    Ok(st)
}

/// Largest excess of a bin count over `previous + 3 sqrt(previous)` among 50
/// equal bins on [0, q_0.99]; nonpositive means nonincreasing up to noise.
pub fn bin_excess(samples: &[f64]) -> f64 {
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let q99 = xs[(0.99 * xs.len() as f64) as usize];
    let mut bins = [0usize; 50];
    for &x in xs.iter().filter(|&&x| x < q99) {
        bins[(50.0 * x / q99) as usize] += 1;
    }
    bins.windows(2)
        .map(|w| {
            let (prev, next) = (w[0] as f64, w[1] as f64);
            next - prev - 3.0 * prev.sqrt()
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

fn mode_at_zero(seed: u64) -> Result<Stats, CliError> {
    let mut st = Stats::new();
    let xs = parallel_series(&stationary(0.5, exp1())?, N, 1e-10, seed)?;
    let excess = bin_excess(&xs);
    st.record("max_bin_excess", excess);
    st.require("nonincreasing", excess <= 0.0);
    Ok(st)
}

/// The four example models and the verdicts they must get.
pub fn existence_cases() -> Result<Vec<(&'static str, ShotNoiseModel, ConvergenceStatus)>, CliError> {
    let exp = ResponseFunction::exponential(1.0)?;
    let power = ResponseFunction::power(2.0)?;
    Ok(vec![
        (
            "exponential_log_pareto",
            ShotNoiseModel::new(1.0, NamedLaw::log_pareto(), exp.clone())?,
            ConvergenceStatus::Diverges,
        ),
        (
            "exponential_gamma",
            ShotNoiseModel::new(1.0, NamedLaw::gamma(2.0, 1.0)?, exp)?,
            ConvergenceStatus::Converges,
        ),
        (
            "power_exponential",
            ShotNoiseModel::new(1.0, exp1(), power.clone())?,
            ConvergenceStatus::Converges,
        ),
        (
            "power_pareto",
            ShotNoiseModel::new(1.0, NamedLaw::pareto(0.5)?, power)?,
            ConvergenceStatus::Diverges,
        ),
        (
            "indicator_log_pareto",
            ShotNoiseModel::new(1.0, NamedLaw::log_pareto(), ResponseFunction::indicator(0.0, 1.0)?)?,
            ConvergenceStatus::Converges,
        ),
    ])
}

fn existence_criteria(_: u64) -> Result<Stats, CliError> {
    let mut st = Stats::new();
    for (name, model, want) in existence_cases()? {
        st.require(name, existence_check(&model).status == want);
    }
    Ok(st)
}

fn index_recovery(seed: u64) -> Result<Stats, CliError> {
    let mut st = Stats::new();
    for (i, rho) in [0.5, 1.0, 2.0].into_iter().enumerate() {
        let s = seed.wrapping_add(i as u64);
        let xs = parallel_series(&stationary(rho, exp1())?, N, 1e-12, s)?;
        let est = rv_index_from_samples(&xs, &mut stream(s, AUX_STREAM))?;
        st.record(format!("index_rho_{rho}"), est.index);
        st.below(&format!("relative_error_rho_{rho}"), (est.index - rho).abs() / rho, 0.15);
    }
    Ok(st)
}
