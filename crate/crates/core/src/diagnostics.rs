//! Regular-variation diagnostics at zero and goodness-of-fit statistics.
//!
//! The index ρ in F(x) ~ x^ρ L(x) is estimated three ways:
//!
//! * from an analytic CDF: log-log slopes over 8-point windows of the grid
//!   x_j = x_max 2^{−j}, followed deep towards zero;
//! * from samples: weighted log-log regression of the empirical CDF over
//!   nested windows, accepted once three consecutive windows agree to 5%;
//! * from a Laplace transform: the local index −sΦ'(s)/Φ(s) at
//!   s = 10², 10^2.5, …, 10⁶.
//!
//! Slowly converging sequences (slope ≈ ρ + b/|ln x|) are extrapolated, and
//! the confidence band then spans from the last observed value through the
//! extrapolated limit and as far again beyond it.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;
use rand::Rng;
use rand_distr::{Binomial, Distribution};

use crate::error::{Error, Result};
use crate::law::{CdfMethod, NamedLaw};
use crate::transform::{LaplaceTransform, Provenance};

/// Indices below this are treated as indistinguishable from slow variation.
pub const POSITIVITY_THRESHOLD: f64 = 0.1;
/// Slope above which a still-growing sequence counts as rapid variation.
pub const RAPID_THRESHOLD: f64 = 10.0;
/// Minimum number of samples below x_max.
pub const MIN_WINDOW_SAMPLES: usize = 100;
/// Sample size below which estimates carry a warning record.
pub const RECOMMENDED_SAMPLES: usize = 10_000;
const BOOTSTRAP_REPLICATES: usize = 200;
const WINDOW: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    FromSamples,
    FromCdf,
    FromLt,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::FromSamples => "FromSamples",
            Method::FromCdf => "FromCDF",
            Method::FromLt => "FromLT",
        }
    }
}

/// Shape of F near zero suggested by the estimate sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Finite positive or zero index.
    Regular,
    /// Slopes exceed [`RAPID_THRESHOLD`] and keep growing, or F vanishes.
    Rapid,
}

/// One piece of evidence behind an estimate or verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Evidence {
    pub check: &'static str,
    pub value: f64,
    pub threshold: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IndexEstimate {
    pub index: f64,
    pub ci: (f64, f64),
    pub method: Method,
    pub regime: Regime,
    /// Outcome of the ratio test F(2x)/F(x), F(10x)/F(x) ≈ 1.
    pub slow_variation: bool,
    pub evidence: Vec<Evidence>,
}

impl IndexEstimate {
    pub fn half_width(&self) -> f64 {
        0.5 * (self.ci.1 - self.ci.0)
    }

    fn rapid(method: Method, mut evidence: Vec<Evidence>, value: f64) -> Self {
        evidence.push(Evidence {
            check: "rapid variation",
            value,
            threshold: RAPID_THRESHOLD,
        });
        Self {
            index: f64::INFINITY,
            ci: (RAPID_THRESHOLD, f64::INFINITY),
            method,
            regime: Regime::Rapid,
            slow_variation: false,
            evidence,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Verdict {
    ShotNoise { index: f64, ci: (f64, f64) },
    SelfDecomposableNotSN,
    NotSdSlowVariation,
    Inconclusive,
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Verdict::ShotNoise { .. } => "ShotNoise",
            Verdict::SelfDecomposableNotSN => "SelfDecomposableNotSN",
            Verdict::NotSdSlowVariation => "NotSD_SlowVariation",
            Verdict::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiagnosisReport {
    pub verdict: Verdict,
    pub index: f64,
    pub ci: (f64, f64),
    pub method: Method,
    pub evidence: Vec<Evidence>,
}

// ------------------------------------------------------------------ fitting

struct Fit {
    slope: f64,
    intercept: f64,
    se_slope: f64,
    se_intercept: f64,
}

/// Weighted least squares y = intercept + slope·x.
fn wls(x: &[f64], y: &[f64], w: &[f64]) -> Option<Fit> {
    let sw: f64 = w.iter().sum();
    if x.len() < 2 || !(sw > 0.0) {
        return None;
    }
    let mx = x.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / sw;
    let my = y.iter().zip(w).map(|(a, b)| a * b).sum::<f64>() / sw;
    let sxx: f64 = x.iter().zip(w).map(|(a, b)| b * (a - mx).powi(2)).sum();
    let sxy: f64 = x
        .iter()
        .zip(y)
        .zip(w)
        .map(|((a, c), b)| b * (a - mx) * (c - my))
        .sum();
    if !(sxx > 0.0) {
        return None;
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let dof = x.len().saturating_sub(2).max(1) as f64;
    let rss: f64 = x
        .iter()
        .zip(y)
        .zip(w)
        .map(|((a, c), b)| b * (c - intercept - slope * a).powi(2))
        .sum();
    // Weights are relative; scale the variance by the mean weight.
    let sigma2 = rss / dof;
    let se_slope = (sigma2 / sxx).sqrt();
    let se_intercept = (sigma2 * (1.0 / sw + mx * mx / sxx)).sqrt();
    Some(Fit {
        slope,
        intercept,
        se_slope,
        se_intercept,
    })
}

fn ols(x: &[f64], y: &[f64]) -> Option<Fit> {
    wls(x, y, &vec![1.0; x.len()])
}

/// Extrapolated limit of `values` observed at growing `scales`
/// (|ln x| or ln s), with the band convention of the module docs.
struct Limit {
    value: f64,
    ci: (f64, f64),
    rule: &'static str,
}

/// With `slow` set the sequence is known to approach its limit like
/// 1/scale, and only the log-extrapolation is tried.
fn extrapolate(values: &[f64], scales: &[f64], se: f64, slow: bool) -> Limit {
    let n = values.len();
    let last = values[n - 1];
    let mut noise = 1.96 * se;
    if n < 3 {
        return Limit {
            value: last,
            ci: (last - noise, last + noise),
            rule: "last",
        };
    }
    let d1 = values[n - 1] - values[n - 2];
    let d0 = values[n - 2] - values[n - 3];
    if !slow && d1.abs() <= 1e-7 * last.abs().max(1.0) {
        let w = noise.max(d1.abs()).max(1e-9);
        return Limit {
            value: last,
            ci: (last - w, last + w),
            rule: "converged",
        };
    }
    let ratio = d1 / d0;
    let (value, rule) = if !slow && d0 != 0.0 && ratio > 0.0 && ratio < 0.75 {
        (last - d1 * d1 / (d1 - d0), "aitken")
    } else {
        // slope = a + b / scale over the deeper half of the sequence
        let start = n / 2;
        let inv: Vec<f64> = scales[start..].iter().map(|s| 1.0 / s).collect();
        match ols(&inv, &values[start..]) {
            Some(fit) if fit.intercept.is_finite() => {
                noise = noise.max(1.96 * fit.se_intercept);
                (fit.intercept, "log-extrapolation")
            }
            _ => (last, "last"),
        }
    };
    let gap = (last - value).abs();
    let (lo, hi) = if value <= last {
        (value - gap, last)
    } else {
        (last, value + gap)
    };
    Limit {
        value,
        ci: (lo - noise, hi + noise),
        rule,
    }
}

fn growing(values: &[f64]) -> bool {
    let n = values.len();
    n >= 3 && values[n - 1] > values[n - 2] && values[n - 2] > values[n - 3]
}

/// Ratio test for slow variation, recorded as evidence.
fn ratio_test(r2: f64, r10: f64, evidence: &mut Vec<Evidence>) -> bool {
    let dev2 = (r2 - 1.0).abs();
    let dev10 = r10.ln().abs();
    evidence.push(Evidence {
        check: "|F(2x)/F(x) - 1|",
        value: dev2,
        threshold: 0.1,
    });
    evidence.push(Evidence {
        check: "|ln F(10x)/F(x)|",
        value: dev10,
        threshold: 1.25f64.ln(),
    });
    r2 >= 0.9 && r2 <= 1.1 && r10 >= 0.8 && r10 <= 1.25
}

// ------------------------------------------------------------ analytic CDF

/// Index at zero of an analytic CDF. `scale` sets x_max = 0.1·scale; pass
/// the median or another typical value of the law.
pub fn rv_index_at_zero(cdf: impl Fn(f64) -> Result<f64>, scale: f64) -> Result<IndexEstimate> {
    if !(scale > 0.0 && scale.is_finite()) {
        return Err(Error::InvalidParameter {
            context: "rv_index_at_zero",
            reason: alloc::format!("scale {scale} must be positive and finite"),
        });
    }
    let x_max = 0.1 * scale;
    let mut xs = Vec::new();
    let mut logf = Vec::new();
    let mut vanished = false;
    let mut x = x_max;
    while x > 1e-300 {
        let f = cdf(x)?;
        if !(f > 1e-280) {
            vanished = f == 0.0 || xs.len() < WINDOW;
            break;
        }
        xs.push(x.ln());
        logf.push(f.ln());
        x *= 0.5;
    }
    let mut evidence = Vec::new();
    if xs.len() < WINDOW {
        if vanished {
            return Ok(IndexEstimate::rapid(Method::FromCdf, evidence, f64::INFINITY));
        }
        return Err(Error::InsufficientData {
            found: xs.len(),
            required: WINDOW,
        });
    }
    // Sliding windows, stepping 4 grid points (a factor 16 in x).
    let mut slopes = Vec::new();
    let mut scales = Vec::new();
    let mut ses = Vec::new();
    let mut start = 0;
    while start + WINDOW <= xs.len() {
        let fit = ols(&xs[start..start + WINDOW], &logf[start..start + WINDOW])
            .ok_or(Error::InsufficientData { found: 0, required: WINDOW })?;
        slopes.push(fit.slope);
        scales.push(-xs[start + WINDOW / 2]);
        ses.push(fit.se_slope);
        start += 4;
    }
    let last = *slopes.last().unwrap();
    if last > RAPID_THRESHOLD && (growing(&slopes) || vanished) {
        return Ok(IndexEstimate::rapid(Method::FromCdf, evidence, last));
    }
    // Ratio test at the two smallest grid points.
    let n = xs.len();
    let mut slow = true;
    for &lx in &xs[n - 2..] {
        let x = lx.exp();
        let f = cdf(x)?;
        slow &= ratio_test(cdf(2.0 * x)? / f, cdf(10.0 * x)? / f, &mut evidence);
    }
    let se = *ses.last().unwrap();
    let limit = extrapolate(&slopes, &scales, se, slow);
    evidence.push(Evidence {
        check: "deepest window slope",
        value: last,
        threshold: POSITIVITY_THRESHOLD,
    });
    evidence.push(Evidence {
        check: limit.rule,
        value: limit.value,
        threshold: POSITIVITY_THRESHOLD,
    });
    Ok(IndexEstimate {
        index: limit.value,
        ci: limit.ci,
        method: Method::FromCdf,
        regime: Regime::Regular,
        slow_variation: slow,
        evidence,
    })
}

// ----------------------------------------------------------------- samples

struct Grid {
    log_x: Vec<f64>,
    counts: Vec<f64>,
}

fn count_le(sorted: &[f64], x: f64) -> usize {
    sorted.partition_point(|&v| v <= x)
}

fn nested_slope(grid: &Grid, counts: &[f64], k: usize, n: f64) -> Option<Fit> {
    let mut x = Vec::new();
    let mut y = Vec::new();
    let mut w = Vec::new();
    for j in k..grid.log_x.len() {
        if counts[j] > 0.0 {
            x.push(grid.log_x[j]);
            y.push((counts[j] / n).ln());
            w.push(counts[j]);
        }
    }
    wls(&x, &y, &w)
}

/// Index at zero from a sample. The confidence band is a percentile
/// bootstrap over multinomially resampled grid counts drawn from `rng`.
pub fn rv_index_from_samples<R: Rng + ?Sized>(samples: &[f64], rng: &mut R) -> Result<IndexEstimate> {
    if samples.iter().any(|v| !(*v >= 0.0)) {
        return Err(Error::InvalidParameter {
            context: "rv_index_from_samples",
            reason: "samples must be nonnegative".into(),
        });
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let n = sorted.len();
    let mut evidence = Vec::new();
    if n < RECOMMENDED_SAMPLES {
        evidence.push(Evidence {
            check: "sample size below recommendation",
            value: n as f64,
            threshold: RECOMMENDED_SAMPLES as f64,
        });
    }
    if n == 0 {
        return Err(Error::InsufficientData { found: 0, required: MIN_WINDOW_SAMPLES });
    }
    let x_max = sorted[(n - 1) / 10];
    let below = count_le(&sorted, x_max);
    if below < MIN_WINDOW_SAMPLES || !(x_max > 0.0) {
        return Err(Error::InsufficientData {
            found: if x_max > 0.0 { below } else { 0 },
            required: MIN_WINDOW_SAMPLES,
        });
    }
    let mut grid = Grid {
        log_x: Vec::new(),
        counts: Vec::new(),
    };
    let mut x = x_max;
    while x > 1e-300 {
        let c = count_le(&sorted, x);
        if c < 10 {
            break;
        }
        grid.log_x.push(x.ln());
        grid.counts.push(c as f64);
        x *= 0.5;
    }
    let nf = n as f64;
    if grid.counts.len() < 3 || grid.counts[1] == 0.0 {
        return Ok(IndexEstimate::rapid(Method::FromSamples, evidence, f64::INFINITY));
    }
    let last_k = grid.log_x.len() - 3;
    let slopes: Vec<f64> = (0..=last_k)
        .map(|k| nested_slope(&grid, &grid.counts, k, nf).map_or(f64::NAN, |f| f.slope))
        .collect();
    let mut accepted = None;
    for k in 0..slopes.len().saturating_sub(2) {
        let t = &slopes[k..k + 3];
        let mean = (t[0] + t[1] + t[2]) / 3.0;
        if t.iter().all(|s| (s - mean).abs() <= 0.05 * mean.abs()) {
            accepted = Some(k + 2);
            break;
        }
    }
    let k = match accepted {
        Some(k) => k,
        None => {
            evidence.push(Evidence {
                check: "no stable window triple",
                value: slopes.len() as f64,
                threshold: 3.0,
            });
            last_k.min(slopes.len() / 2)
        }
    };
    let estimate = slopes[k];
    if estimate > RAPID_THRESHOLD && growing(&slopes[..=k]) {
        return Ok(IndexEstimate::rapid(Method::FromSamples, evidence, estimate));
    }
    // Bootstrap: multinomial over the bins cut by the grid.
    let m = grid.counts.len();
    let mut probs = Vec::with_capacity(m + 1);
    probs.push((nf - grid.counts[0]) / nf);
    for j in 0..m {
        let next = if j + 1 < m { grid.counts[j + 1] } else { 0.0 };
        probs.push((grid.counts[j] - next) / nf);
    }
    let mut reps = Vec::with_capacity(BOOTSTRAP_REPLICATES);
    let mut bins = vec![0.0; m + 1];
    for _ in 0..BOOTSTRAP_REPLICATES {
        let mut left = n as u64;
        let mut mass = 1.0;
        for (b, &p) in bins.iter_mut().zip(&probs) {
            let q = if mass > 0.0 { (p / mass).clamp(0.0, 1.0) } else { 0.0 };
            let draw = if left == 0 || q == 0.0 {
                0
            } else {
                Binomial::new(left, q).expect("probability in [0, 1]").sample(rng)
            };
            *b = draw as f64;
            left -= draw;
            mass -= p;
        }
        // cumulative counts below each grid point
        let mut counts = vec![0.0; m];
        let mut acc = 0.0;
        for j in (0..m).rev() {
            acc += bins[j + 1];
            counts[j] = acc;
        }
        if let Some(f) = nested_slope(&grid, &counts, k, nf) {
            reps.push(f.slope);
        }
    }
    reps.sort_by(f64::total_cmp);
    let (mut lo, mut hi) = (estimate, estimate);
    if reps.len() >= 20 {
        let q = |p: f64| reps[((reps.len() - 1) as f64 * p).round() as usize];
        lo = lo.min(q(0.025));
        hi = hi.max(q(0.975));
    }
    evidence.push(Evidence {
        check: "accepted window slope",
        value: estimate,
        threshold: POSITIVITY_THRESHOLD,
    });
    // Ratio test at the two deepest grid points holding enough samples for
    // a 1% reading of F(10x)/F(x).
    let deep: Vec<usize> = (0..m).filter(|&j| grid.counts[j] >= 100.0).collect();
    let floor = (nf / 100.0).max(100.0);
    let probe: Vec<usize> = (0..m).filter(|&j| grid.counts[j] >= floor).collect();
    let mut slow = probe.len() >= 2;
    for &j in probe.iter().rev().take(2) {
        let x = grid.log_x[j].exp();
        let c = grid.counts[j];
        let r2 = count_le(&sorted, 2.0 * x) as f64 / c;
        let r10 = count_le(&sorted, 10.0 * x) as f64 / c;
        slow &= ratio_test(r2, r10, &mut evidence);
    }
    let mut index = estimate;
    if slow {
        // Follow the local slope towards zero and extrapolate in 1/|ln x|.
        let mut local = Vec::new();
        let mut scales = Vec::new();
        let mut start = 0;
        while start + WINDOW <= deep.len() {
            let idx = &deep[start..start + WINDOW];
            let xv: Vec<f64> = idx.iter().map(|&j| grid.log_x[j]).collect();
            let yv: Vec<f64> = idx.iter().map(|&j| (grid.counts[j] / nf).ln()).collect();
            let wv: Vec<f64> = idx.iter().map(|&j| grid.counts[j]).collect();
            if let Some(f) = wls(&xv, &yv, &wv) {
                local.push(f.slope);
                scales.push(-xv[WINDOW / 2]);
            }
            start += 4;
        }
        // The accepted window sits too shallow to see a slowly varying F, so
        // the extrapolated limit replaces it.
        if local.len() >= 3 {
            let limit = extrapolate(&local, &scales, 0.0, true);
            evidence.push(Evidence {
                check: limit.rule,
                value: limit.value,
                threshold: POSITIVITY_THRESHOLD,
            });
            index = limit.value;
            (lo, hi) = limit.ci;
        }
    }
    Ok(IndexEstimate {
        index,
        ci: (lo, hi),
        method: Method::FromSamples,
        regime: Regime::Regular,
        slow_variation: slow,
        evidence,
    })
}

// ---------------------------------------------------------------------- LT

/// lim_{s→∞} −sΦ'(s)/Φ(s), the index at zero of the law with transform Φ.
pub fn rv_index_from_lt(phi: &LaplaceTransform) -> Result<IndexEstimate> {
    let s_values: Vec<f64> = (0..9).map(|k| 10f64.powf(2.0 + 0.5 * k as f64)).collect();
    let mut local = Vec::with_capacity(s_values.len());
    for &s in &s_values {
        local.push(phi.local_index(s)?);
    }
    let mut evidence = Vec::new();
    let incs: Vec<f64> = local.windows(2).map(|w| w[1] - w[0]).collect();
    let sign_changes = incs
        .windows(2)
        .filter(|w| w[0] * w[1] < 0.0 && w[0].abs().min(w[1].abs()) > 1e-10)
        .count();
    if sign_changes > 0 {
        evidence.push(Evidence {
            check: "non-monotone local index",
            value: sign_changes as f64,
            threshold: 0.0,
        });
    }
    let last = *local.last().unwrap();
    if last > RAPID_THRESHOLD && growing(&local) {
        return Ok(IndexEstimate::rapid(Method::FromLt, evidence, last));
    }
    evidence.push(Evidence {
        check: "local index at s = 1e6",
        value: last,
        threshold: POSITIVITY_THRESHOLD,
    });
    let mut slow = true;
    for &s in &s_values[s_values.len() - 2..] {
        let l = phi.log_eval(s)?;
        let r2 = (phi.log_eval(2.0 * s)? - l).exp();
        let r10 = (phi.log_eval(10.0 * s)? - l).exp();
        // Φ(λs)/Φ(s) → 1 at ∞ iff F(x/λ)/F(x) → 1 at 0.
        slow &= ratio_test(1.0 / r2, 1.0 / r10, &mut evidence);
    }
    let scales: Vec<f64> = s_values.iter().map(|s| s.ln()).collect();
    let limit = extrapolate(&local, &scales, 0.0, slow);
    evidence.push(Evidence {
        check: limit.rule,
        value: limit.value,
        threshold: POSITIVITY_THRESHOLD,
    });
    Ok(IndexEstimate {
        index: limit.value,
        ci: limit.ci,
        method: Method::FromLt,
        regime: Regime::Regular,
        slow_variation: slow,
        evidence,
    })
}

// ----------------------------------------------------------- classification

/// Verdict from an index estimate; `sd_provenance` states that the law is
/// known to be selfdecomposable from outside the data.
pub fn verdict_from_index(est: &IndexEstimate, sd_provenance: bool) -> Verdict {
    let (lo, hi) = est.ci;
    if est.regime == Regime::Rapid {
        if sd_provenance {
            Verdict::SelfDecomposableNotSN
        } else {
            Verdict::Inconclusive
        }
    } else if est.slow_variation && hi < POSITIVITY_THRESHOLD {
        Verdict::NotSdSlowVariation
    } else if lo > 0.0 && est.index.is_finite() && est.index > 0.0 {
        Verdict::ShotNoise {
            index: est.index,
            ci: est.ci,
        }
    } else {
        Verdict::Inconclusive
    }
}

fn report(est: IndexEstimate, sd_provenance: bool) -> DiagnosisReport {
    let verdict = verdict_from_index(&est, sd_provenance);
    let mut evidence = est.evidence;
    evidence.push(Evidence {
        check: "ci lower bound",
        value: est.ci.0,
        threshold: 0.0,
    });
    DiagnosisReport {
        verdict,
        index: est.index,
        ci: est.ci,
        method: est.method,
        evidence,
    }
}

fn inconclusive(method: Method, check: &'static str, value: f64) -> DiagnosisReport {
    DiagnosisReport {
        verdict: Verdict::Inconclusive,
        index: f64::NAN,
        ci: (f64::NEG_INFINITY, f64::INFINITY),
        method,
        evidence: vec![Evidence {
            check,
            value,
            threshold: 0.0,
        }],
    }
}

/// What to classify.
#[derive(Debug, Clone, Copy)]
pub enum DiagnosisInput<'a> {
    Law(&'a NamedLaw),
    Transform(&'a LaplaceTransform),
    Samples(&'a [f64]),
}

/// Classifies a law, transform or sample. `rng` drives the bootstrap for
/// samples and is unused otherwise.
pub fn classify<R: Rng + ?Sized>(input: DiagnosisInput<'_>, rng: &mut R) -> DiagnosisReport {
    match input {
        DiagnosisInput::Law(law) => classify_law(law),
        DiagnosisInput::Transform(phi) => classify_transform(phi),
        DiagnosisInput::Samples(xs) => classify_samples(xs, rng),
    }
}

pub fn classify_law(law: &NamedLaw) -> DiagnosisReport {
    if law.atom() == Some(0.0) {
        return inconclusive(Method::FromCdf, "point mass at zero", 0.0);
    }
    let est = if law.cdf_method() != CdfMethod::LtInversion {
        let scale = match law.median() {
            Ok(m) => m,
            Err(e) => return inconclusive(Method::FromCdf, error_check(&e), f64::NAN),
        };
        rv_index_at_zero(|x| law.cdf(x), scale)
    } else {
        match LaplaceTransform::from_law(*law) {
            Ok(phi) => rv_index_from_lt(&phi),
            Err(e) => Err(e),
        }
    };
    match est {
        Ok(est) => report(est, law.sd_provenance()),
        Err(e) => inconclusive(Method::FromCdf, error_check(&e), f64::NAN),
    }
}

pub fn classify_transform(phi: &LaplaceTransform) -> DiagnosisReport {
    let sd = match phi.provenance() {
        Provenance::ClosedForm(law) => law.sd_provenance(),
        Provenance::ShotNoiseFromJumps | Provenance::SdFromBdlp => true,
        _ => false,
    };
    match rv_index_from_lt(phi) {
        Ok(est) => report(est, sd),
        Err(e) => inconclusive(Method::FromLt, error_check(&e), f64::NAN),
    }
}

pub fn classify_samples<R: Rng + ?Sized>(samples: &[f64], rng: &mut R) -> DiagnosisReport {
    match rv_index_from_samples(samples, rng) {
        Ok(est) => report(est, false),
        Err(e) => inconclusive(Method::FromSamples, error_check(&e), f64::NAN),
    }
}

fn error_check(e: &Error) -> &'static str {
    match e {
        Error::InsufficientData { .. } => "insufficient small-x mass",
        Error::Quadrature { .. } => "quadrature failure",
        Error::Differentiation { .. } => "differentiation failure",
        _ => "evaluation failure",
    }
}

// -------------------------------------------------------------- tail ratio

/// (1 − F(x)) / F(1/x) for the positive Linnik law with 0 < ρ < 1. The
/// limit as x → ∞ is β² Γ(1 + ρ) / Γ(1 − ρ).
pub fn linnik_tail_ratio(rho: f64, beta: f64, x: f64) -> Result<f64> {
    if !(rho > 0.0 && rho < 1.0) {
        return Err(Error::InvalidParameter {
            context: "linnik_tail_ratio",
            reason: alloc::format!("rho = {rho} must lie in (0, 1)"),
        });
    }
    if !(x > 0.0 && x.is_finite()) {
        return Err(Error::Domain {
            function: "linnik_tail_ratio",
            value: x,
            expected: "0 < x < ∞",
        });
    }
    let law = NamedLaw::positive_linnik(rho, beta)?;
    let num = law.sf(x)?;
    let den = law.cdf(1.0 / x)?;
    if num == 0.0 || den == 0.0 {
        return Err(Error::Underflow {
            function: "linnik_tail_ratio",
            value: x,
        });
    }
    Ok(num / den)
}

// ---------------------------------------------------------------------- KS

/// One-sample Kolmogorov–Smirnov statistic sup |F_n − F|.
pub fn ks_distance(samples: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut xs = samples.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    let mut d: f64 = 0.0;
    for (i, &x) in xs.iter().enumerate() {
        let f = cdf(x);
        d = d.max((i + 1) as f64 / n - f).max(f - i as f64 / n);
    }
    d
}

/// Two-sample Kolmogorov–Smirnov statistic.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    d
}

/// 99% asymptotic band for the one-sample statistic.
pub fn ks_band_99(n: usize) -> f64 {
    1.63 / (n as f64).sqrt()
}

/// 99% asymptotic band for the two-sample statistic.
pub fn ks_two_sample_band_99(n: usize, m: usize) -> f64 {
    let (n, m) = (n as f64, m as f64);
    1.63 * ((n + m) / (n * m)).sqrt()
}
