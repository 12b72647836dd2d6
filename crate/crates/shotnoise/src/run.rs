//! Execution of experiment specs.

use rayon::prelude::*;
use serde_json::{json, Value};
use shotnoise_core::diagnostics::{classify_law, classify_samples, classify_transform};
use shotnoise_core::engine::{draw_series, truncation};
use shotnoise_core::rng::stream;
use shotnoise_core::transform::{bdlp_from_sd, invert_lt, jump_lt_from_sn};
use shotnoise_core::{
    existence_check, simulate_path, ConvergenceStatus, DiagnosisReport, Error, LaplaceTransform, ShotNoiseModel,
};

use crate::error::CliError;
use crate::output::{num, Artifact, Cell, Table};
use crate::spec::{Command, ExperimentSpec, SampleMode};
use crate::verify;

/// Samples per parallel work unit. Chunk `i` always draws from stream `i`,
/// so output does not depend on the number of threads.
pub const CHUNK: usize = 4096;

/// Stream id reserved for bootstrap resampling in `diagnose`.
const BOOTSTRAP_STREAM: u64 = u64::MAX;

fn require<'a, T>(value: &'a Option<T>, field: &str, command: Command) -> Result<&'a T, CliError> {
    value
        .as_ref()
        .ok_or_else(|| CliError::Schema(format!("`{field}` is required for {command:?}")))
}

pub fn run(spec: &ExperimentSpec) -> Result<Artifact, CliError> {
    spec.validate()?;
    match spec.command {
        Command::Sample => sample(spec),
        Command::Transform => transform_table(spec),
        Command::IdentifyBdlp => identify_bdlp(spec),
        Command::IdentifyJumps => identify_jumps(spec),
        Command::Diagnose => diagnose(spec),
        Command::Invert => invert(spec),
        Command::Verify => {
            let name = require(&spec.scenario, "scenario", spec.command)?;
            let outcome = verify::run_scenario(name, spec.seed)?;
            Ok(outcome.artifact())
        }
    }
}

/// `n` draws of Σ ξ_k h(τ_k), split into chunks drawn in parallel.
pub fn parallel_series(model: &ShotNoiseModel, n: usize, tol: f64, seed: u64) -> Result<Vec<f64>, CliError> {
    let verdict = existence_check(model);
    match verdict.status {
        ConvergenceStatus::Converges => {}
        ConvergenceStatus::Diverges => return Err(CliError::Divergent(verdict.criterion)),
        ConvergenceStatus::Unknown => {
            return Err(CliError::Numeric(Error::TruncationBoundUnavailable {
                reason: "existence criterion inconclusive",
            }))
        }
    }
    let trunc = truncation(model, tol)?;
    let chunks = n.div_ceil(CHUNK);
    let parts: Vec<Vec<f64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let len = CHUNK.min(n - c * CHUNK);
            let mut rng = stream(seed, c as u64);
            (0..len).map(|_| draw_series(model, &trunc, &mut rng)).collect()
        })
        .collect();
    Ok(parts.concat())
}

fn sample(spec: &ExperimentSpec) -> Result<Artifact, CliError> {
    let model = require(&spec.model, "model", spec.command)?.to_model()?;
    match spec.mode {
        SampleMode::Stationary | SampleMode::Series => {
            if spec.mode == SampleMode::Stationary && model.rho_param().is_none() {
                return Err(CliError::Schema(
                    "stationary sampling needs an exponential response; use mode \"series\"".into(),
                ));
            }
            let xs = parallel_series(&model, spec.n, spec.tol, spec.seed)?;
            let mut table = Table::new(&["index", "value"]);
            for (i, &x) in xs.iter().enumerate() {
                table.push(vec![i.into(), x.into()]);
            }
            Ok(Artifact {
                table,
                json: Value::Array(xs.into_iter().map(num).collect()),
            })
        }
        SampleMode::Path => {
            let t_max = *require(&spec.t_max, "t_max", spec.command)?;
            let path = simulate_path(&model, t_max, &mut stream(spec.seed, 0))?;
            let mut table = Table::new(&["time", "value"]);
            let mut points = vec![(0.0, path.x0)];
            points.extend(path.events.iter().map(|e| (e.time, e.after)));
            points.push((t_max, path.terminal()));
            for &(t, x) in &points {
                table.push(vec![t.into(), x.into()]);
            }
            let json = points.iter().map(|&(t, x)| json!({"time": num(t), "value": num(x)})).collect();
            Ok(Artifact {
                table,
                json: Value::Array(json),
            })
        }
    }
}

fn grid(spec: &ExperimentSpec) -> Result<Vec<f64>, CliError> {
    match &spec.grid {
        Some(g) => g.values(),
        None => Ok(shotnoise_core::transform::log_grid(1e-2, 1e2, 41)),
    }
}

fn transform_of(spec: &ExperimentSpec) -> Result<LaplaceTransform, CliError> {
    if let Some(t) = &spec.transform {
        return t.build();
    }
    if let Some(law) = &spec.law {
        return Ok(LaplaceTransform::from_law(law.to_law()?)?);
    }
    Err(CliError::Schema(format!(
        "`transform` or `law` is required for {:?}",
        spec.command
    )))
}

/// Rows (s, Φ, log Φ) plus, when `with_index`, the local index −sΦ'/Φ.
fn lt_table(phi: &LaplaceTransform, grid: &[f64], names: &[&'static str], with_index: bool) -> Result<(Table, Value), CliError> {
    let mut table = Table::new(names);
    let mut rows = Vec::with_capacity(grid.len());
    for &s in grid {
        let l = phi.log_eval(s)?;
        let mut row: Vec<Cell> = vec![s.into(), l.exp().into(), l.into()];
        let mut obj = json!({ names[0]: num(s), names[1]: num(l.exp()), names[2]: num(l) });
        if with_index {
            let k = phi.local_index(s)?;
            row.push(k.into());
            obj[names[3]] = num(k);
        }
        table.push(row);
        rows.push(obj);
    }
    Ok((table, Value::Array(rows)))
}

fn transform_table(spec: &ExperimentSpec) -> Result<Artifact, CliError> {
    let phi = transform_of(spec)?;
    let (table, json) = lt_table(&phi, &grid(spec)?, &["s", "phi", "log_phi", "local_index"], true)?;
    Ok(Artifact { table, json })
}

fn identify_bdlp(spec: &ExperimentSpec) -> Result<Artifact, CliError> {
    let phi = transform_of(spec)?;
    let id = bdlp_from_sd(&phi)?;
    let (table, rows) = lt_table(&id.psi, &grid(spec)?, &["s", "psi", "log_psi"], false)?;
    let violations: Vec<Value> = id
        .violations
        .iter()
        .map(|v| json!({"s": num(v.s), "value": num(v.value), "check": v.check}))
        .collect();
    Ok(Artifact {
        table,
        json: json!({"table": rows, "violations": violations}),
    })
}

fn identify_jumps(spec: &ExperimentSpec) -> Result<Artifact, CliError> {
    let phi = transform_of(spec)?;
    let rho = match (spec.rho, &spec.model) {
        (Some(r), _) => r,
        (None, Some(m)) => m.to_model()?.rho_param().ok_or_else(|| {
            CliError::Schema("model needs an exponential response to define rho".into())
        })?,
        (None, None) => return Err(CliError::Schema("`rho` is required for IdentifyJumps".into())),
    };
    let g = jump_lt_from_sn(&phi, rho)?;
    let (table, json) = lt_table(&g, &grid(spec)?, &["s", "g", "log_g"], false)?;
    Ok(Artifact { table, json })
}

fn invert(spec: &ExperimentSpec) -> Result<Artifact, CliError> {
    let phi = transform_of(spec)?;
    let xs = match &spec.x {
        Some(x) => x.clone(),
        None => grid(spec)?,
    };
    let mut table = Table::new(&["x", "cdf", "precision", "method"]);
    let mut rows = Vec::with_capacity(xs.len());
    for &x in &xs {
        let inv = invert_lt(&phi, x)?;
        let method = format!("{:?}", inv.method).to_lowercase();
        table.push(vec![x.into(), inv.value.into(), inv.precision.into(), method.as_str().into()]);
        rows.push(json!({"x": num(x), "cdf": num(inv.value), "precision": num(inv.precision), "method": method}));
    }
    Ok(Artifact {
        table,
        json: Value::Array(rows),
    })
}

pub fn report_json(report: &DiagnosisReport) -> Value {
    json!({
        "verdict": report.verdict.name(),
        "index": num(report.index),
        "ci": [num(report.ci.0), num(report.ci.1)],
        "method": report.method.name(),
        "evidence": report.evidence.iter().map(|e| json!({
            "check": e.check,
            "value": num(e.value),
            "threshold": num(e.threshold),
        })).collect::<Vec<_>>(),
    })
}

fn diagnose(spec: &ExperimentSpec) -> Result<Artifact, CliError> {
    let report = if let Some(xs) = &spec.samples {
        classify_samples(xs, &mut stream(spec.seed, BOOTSTRAP_STREAM))
    } else if let Some(law) = &spec.law {
        classify_law(&law.to_law()?)
    } else if let Some(t) = &spec.transform {
        classify_transform(&t.build()?)
    } else if let Some(m) = &spec.model {
        let xs = parallel_series(&m.to_model()?, spec.n, spec.tol, spec.seed)?;
        classify_samples(&xs, &mut stream(spec.seed, BOOTSTRAP_STREAM))
    } else {
        return Err(CliError::Schema(
            "diagnose needs one of `samples`, `law`, `transform` or `model`".into(),
        ));
    };
    let mut table = Table::new(&["verdict", "index", "ci_lo", "ci_hi", "method"]);
    table.push(vec![
        report.verdict.name().into(),
        report.index.into(),
        report.ci.0.into(),
        report.ci.1.into(),
        report.method.name().into(),
    ]);
    Ok(Artifact {
        table,
        json: report_json(&report),
    })
}
