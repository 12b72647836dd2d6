mod common;

use common::{bessel_i0, gamma_cdf, mean_and_se, simpson};
use shotnoise_core::inversion::InversionMethod;
use shotnoise_core::rng::stream;
use shotnoise_core::transform::{
    bdlp_from_sd, invert_lt, jump_lt_from_sn, log_grid, sd_from_bdlp, sn_lt_from_jumps, subordinate,
};
use shotnoise_core::{LaplaceTransform, NamedLaw};

fn lt(law: NamedLaw) -> LaplaceTransform {
    LaplaceTransform::from_law(law).unwrap()
}

fn max_abs_diff(a: &LaplaceTransform, b: impl Fn(f64) -> f64, grid: &[f64]) -> f64 {
    grid.iter()
        .map(|&s| (a.eval(s).unwrap() - b(s)).abs())
        .fold(0.0, f64::max)
}

/// SD laws with their BDLP transforms written out by hand:
/// log Ψ(s) = s (d/ds) log Φ(s).
fn sd_cases() -> Vec<(NamedLaw, Box<dyn Fn(f64) -> f64>)> {
    vec![
        (
            NamedLaw::gamma(2.0, 1.5).unwrap(),
            Box::new(|s: f64| (-2.0 * s / (1.5 + s)).exp()),
        ),
        (
            NamedLaw::positive_linnik(0.5, 1.0).unwrap(),
            Box::new(|s: f64| (-0.5 * s.sqrt() / (1.0 + s.sqrt())).exp()),
        ),
        (
            NamedLaw::generalized_linnik(1.5, 0.7, 2.0).unwrap(),
            Box::new(|s: f64| {
                let b = 2.0 * s.powf(0.7);
                (-1.5 * b / (1.0 + b)).exp()
            }),
        ),
    ]
}

#[test]
fn sd_bdlp_roundtrips() {
    let grid = log_grid(0.01, 100.0, 40);
    for (law, psi_oracle) in sd_cases() {
        let phi = lt(law);
        let psi = bdlp_from_sd(&phi).unwrap();
        assert!(psi.violations.is_empty(), "{}", law.name());
        let psi = psi.psi;
        assert!(max_abs_diff(&psi, &psi_oracle, &grid) < 1e-9, "{} psi", law.name());

        let phi_back = sd_from_bdlp(&psi).unwrap();
        let err = max_abs_diff(&phi_back, |s| phi.eval(s).unwrap(), &grid);
        assert!(err < 1e-6, "{}: phi -> psi -> phi error {err:e}", law.name());

        let psi_back = bdlp_from_sd(&phi_back).unwrap().psi;
        let err = max_abs_diff(&psi_back, &psi_oracle, &grid);
        assert!(err < 1e-6, "{}: psi -> phi -> psi error {err:e}", law.name());
    }
}

#[test]
fn jump_identification_inverts_shot_noise_construction() {
    let grid = log_grid(0.01, 100.0, 40);
    for jumps in [
        NamedLaw::exponential(1.0).unwrap(),
        NamedLaw::gamma(2.0, 1.0).unwrap(),
        NamedLaw::degenerate(1.0).unwrap(),
    ] {
        for rho in [0.5, 2.0] {
            let g = lt(jumps);
            let phi = sn_lt_from_jumps(&g, rho).unwrap();
            let back = jump_lt_from_sn(&phi, rho).unwrap();
            let err = max_abs_diff(&back, |s| jumps.lt(s).unwrap(), &grid);
            assert!(err < 1e-6, "{} rho {rho}: {err:e}", jumps.name());
        }
    }
}

#[test]
fn linnik_generates_itself() {
    let phi = lt(NamedLaw::positive_linnik(0.5, 1.0).unwrap());
    let g = jump_lt_from_sn(&phi, 0.5).unwrap();
    let grid = log_grid(0.01, 100.0, 20);
    let err = max_abs_diff(&g, |s| 1.0 / (1.0 + s.sqrt()), &grid);
    assert!(err < 1e-6, "{err:e}");
}

#[test]
fn bessel_law_generated_by_its_stated_jumps() {
    // P(ξ ≤ x) = 1 − e^{−x}(1 + x) is Gamma(2, 1)
    let rho = 1.3;
    let phi = sn_lt_from_jumps(&lt(NamedLaw::gamma(2.0, 1.0).unwrap()), rho).unwrap();
    let bessel = |s: f64| (1.0 + s).powf(-rho) * (-rho * (1.0 - 1.0 / (1.0 + s))).exp();
    let err = max_abs_diff(&phi, bessel, &log_grid(0.01, 100.0, 40));
    assert!(err < 1e-6, "{err:e}");
}

#[test]
fn generalized_linnik_chain() {
    let (rho, rho1, beta) = (1.2, 0.7, 1.5);
    let phi = sn_lt_from_jumps(&lt(NamedLaw::positive_linnik(rho1, beta).unwrap()), rho).unwrap();
    let want = |s: f64| (1.0 + beta * s.powf(rho1)).powf(-rho / rho1);
    let err = max_abs_diff(&phi, want, &log_grid(0.01, 100.0, 40));
    assert!(err < 1e-6, "{err:e}");
}

#[test]
fn karamata_index_of_shot_noise_transforms() {
    let cases = [
        (NamedLaw::exponential(1.0).unwrap(), 2.0),
        (NamedLaw::gamma(2.0, 1.0).unwrap(), 0.5),
        (NamedLaw::positive_linnik(0.7, 1.0).unwrap(), 1.0),
    ];
    for (jumps, rho) in cases {
        let phi = sn_lt_from_jumps(&lt(jumps), rho).unwrap();
        let idx: Vec<f64> = [1e3, 1e4, 1e5, 1e6]
            .iter()
            .map(|&s| phi.local_index(s).unwrap())
            .collect();
        let gaps: Vec<f64> = idx.iter().map(|v| (v - rho).abs()).collect();
        assert!(gaps.windows(2).all(|w| w[1] <= w[0]), "{}: {idx:?}", jumps.name());
        assert!(gaps[3] < 0.01, "{}: {idx:?}", jumps.name());
    }
}

#[test]
fn inversion_recovers_gamma_cdf() {
    let phi = sn_lt_from_jumps(&lt(NamedLaw::exponential(1.0).unwrap()), 2.0).unwrap();
    for i in 1..=20 {
        let x = 0.25 * i as f64;
        let inv = invert_lt(&phi, x).unwrap();
        assert!((inv.value - gamma_cdf(2.0, x)).abs() < 1e-4, "x = {x}: {inv:?}");
    }
}

#[test]
fn inversion_of_bessel_transform_matches_integrated_density() {
    let phi = lt(NamedLaw::bessel(1.0).unwrap());
    let formula = |s: f64| (1.0 + s).recip() * (-(1.0 - 1.0 / (1.0 + s))).exp();
    assert!(max_abs_diff(&phi, formula, &log_grid(0.01, 100.0, 40)) < 1e-14);
    let pdf = |x: f64| (-1.0 - x).exp() * bessel_i0(2.0 * x.sqrt());
    for i in 0..20 {
        let x = 0.1 * 100f64.powf(i as f64 / 19.0);
        let want = simpson(pdf, 0.0, x, 4000);
        let got = invert_lt(&phi, x).unwrap();
        assert_eq!(got.method, InversionMethod::Euler);
        assert!((got.value - want).abs() < 1e-4, "x = {x}: {} vs {want}", got.value);
    }
}

#[test]
fn stehfest_fallback_for_real_only_transforms() {
    let phi = LaplaceTransform::from_log_fn(|s| -2.0 * s.ln_1p());
    assert!(!phi.supports_complex());
    for x in [0.5, 1.0, 2.0, 4.0] {
        let got = invert_lt(&phi, x).unwrap();
        assert_eq!(got.method, InversionMethod::Stehfest);
        assert!((got.value - gamma_cdf(2.0, x)).abs() < 1e-3, "x = {x}: {got:?}");
    }
}

#[test]
fn subordination_matches_direct_simulation() {
    // X₁ gamma process with unit-time law Exp(1); X₂(1) ~ Exp(1), so
    // X₁(X₂(1)) given X₂(1) = t is Gamma(t, 1).
    let e = lt(NamedLaw::exponential(1.0).unwrap());
    let phi3 = subordinate(&e, &e);
    let mut rng = stream(700, 0);
    let exp1 = NamedLaw::exponential(1.0).unwrap();
    let xs: Vec<f64> = (0..100_000)
        .map(|_| {
            let t = exp1.sample(&mut rng);
            NamedLaw::gamma(t, 1.0).unwrap().sample(&mut rng)
        })
        .collect();
    for s in [0.1, 1.0, 10.0, 100.0] {
        let ys: Vec<f64> = xs.iter().map(|x| (-s * x).exp()).collect();
        let (m, se) = mean_and_se(&ys);
        let want = 1.0 / (1.0 + s.ln_1p());
        assert!((phi3.eval(s).unwrap() - want).abs() < 1e-14);
        assert!((m - want).abs() < 4.0 * se, "s = {s}: {m} vs {want}");
    }
}

#[test]
fn subordinated_gamma_is_slowly_varying() {
    let g = lt(NamedLaw::gamma(1.0, 1.0).unwrap());
    let phi3 = subordinate(&g, &g);
    assert!(phi3.local_index(1e6).unwrap() < 0.1);
    // Φ₃(λs)/Φ₃(s) → 1 for fixed λ
    for lambda in [2.0, 10.0] {
        let r = phi3.eval(lambda * 1e8).unwrap() / phi3.eval(1e8).unwrap();
        assert!((r - 1.0).abs() < 0.15, "{lambda}: {r}");
    }
}

#[test]
fn transforms_pass_validity_checks() {
    let grid = log_grid(1e-3, 1e3, 50);
    let e = lt(NamedLaw::exponential(1.0).unwrap());
    let built = [
        sn_lt_from_jumps(&lt(NamedLaw::positive_linnik(0.5, 1.0).unwrap()), 0.7).unwrap(),
        bdlp_from_sd(&lt(NamedLaw::gamma(2.0, 1.0).unwrap())).unwrap().psi,
        subordinate(&e, &e),
    ];
    for phi in &built {
        assert!(phi.check_validity(&grid).is_empty(), "{:?}", phi.provenance());
    }
}
