mod common;

use std::f64::consts::{E, FRAC_2_PI, PI};

use common::{bessel_i0, draws, erfc, gamma_cdf, ln_gamma, mean_and_se, simpson};
use shotnoise_core::diagnostics::{ks_band_99, ks_distance, ks_two_sample, ks_two_sample_band_99};
use shotnoise_core::rng::stream;
use shotnoise_core::special::{bessel_i, mittag_leffler};
use shotnoise_core::NamedLaw;

const N: usize = 100_000;

fn assert_ks(name: &str, xs: &[f64], cdf: impl Fn(f64) -> f64) {
    let d = ks_distance(xs, cdf);
    let band = ks_band_99(xs.len());
    assert!(d < band, "{name}: D = {d:.5}, band {band:.5}");
}

#[test]
fn samplers_match_closed_form_cdfs() {
    type Oracle = Box<dyn Fn(f64) -> f64>;
    let cases: Vec<(NamedLaw, Oracle)> = vec![
        (NamedLaw::exponential(2.0).unwrap(), Box::new(|x: f64| 1.0 - (-2.0 * x).exp())),
        (NamedLaw::gamma(0.5, 1.0).unwrap(), Box::new(|x| gamma_cdf(0.5, x))),
        (NamedLaw::gamma(2.0, 3.0).unwrap(), Box::new(|x| gamma_cdf(2.0, 3.0 * x))),
        (NamedLaw::weibull(0.5, 2.0).unwrap(), Box::new(|x: f64| 1.0 - (-2.0 * x.sqrt()).exp())),
        (
            NamedLaw::burr(0.7, 1.0, 2.0).unwrap(),
            Box::new(|x: f64| 1.0 - (1.0 / (x.powf(0.7) + 1.0)).powi(2)),
        ),
        (NamedLaw::half_cauchy(), Box::new(|x: f64| FRAC_2_PI * x.atan())),
        (NamedLaw::log_cauchy(), Box::new(|x: f64| 0.5 + x.ln().atan() / PI)),
        (NamedLaw::positive_stable(0.5).unwrap(), Box::new(|x: f64| erfc(0.5 / x.sqrt()))),
        (NamedLaw::pareto(0.5).unwrap(), Box::new(|x: f64| if x <= 1.0 { 0.0 } else { 1.0 - x.powf(-0.5) })),
        (NamedLaw::log_pareto(), Box::new(|x: f64| if x <= E { 0.0 } else { 1.0 - 1.0 / x.ln() })),
        (NamedLaw::positive_linnik(1.0, 2.0).unwrap(), Box::new(|x: f64| 1.0 - (-x / 2.0).exp())),
        (
            NamedLaw::generalized_linnik(1.5, 1.0, 2.0).unwrap(),
            Box::new(|x| gamma_cdf(1.5, x / 2.0)),
        ),
    ];
    for (i, (law, oracle)) in cases.iter().enumerate() {
        let xs = draws(law, 100 + i as u64, N);
        assert_ks(law.name(), &xs, oracle);
    }
}

/// P(X ≤ x) for the Bessel law, as a Poisson(ρ) mixture of Gamma(k + ρ, 1).
fn bessel_mixture_oracle(rho: f64, x: f64) -> f64 {
    let mut w = (-rho).exp();
    let mut total = 0.0;
    for k in 0..200 {
        total += w * gamma_cdf(k as f64 + rho, x);
        w *= rho / (k + 1) as f64;
    }
    total
}

#[test]
fn bessel_mixture_matches_integrated_density() {
    // density e^{−1−x} I_0(2√x) at ρ = 1
    let pdf = |x: f64| (-1.0 - x).exp() * bessel_i0(2.0 * x.sqrt());
    for i in 1..=20 {
        let x = 0.5 * i as f64;
        let want = simpson(pdf, 0.0, x, 4000);
        assert!((bessel_mixture_oracle(1.0, x) - want).abs() < 1e-9, "x = {x}");
    }
}

#[test]
fn samplers_match_special_function_cdfs() {
    let bessel = NamedLaw::bessel(1.0).unwrap();
    let xs = draws(&bessel, 200, N);
    assert_ks("bessel", &xs, |x| bessel_mixture_oracle(1.0, x));
    let bessel = NamedLaw::bessel(0.4).unwrap();
    let xs = draws(&bessel, 201, N);
    assert_ks("bessel(0.4)", &xs, |x| bessel_mixture_oracle(0.4, x));

    // The library CDFs here are checked against high-precision values below.
    for (seed, law) in [
        (202, NamedLaw::positive_linnik(0.5, 1.0).unwrap()),
        (203, NamedLaw::positive_linnik(0.8, 2.0).unwrap()),
        (204, NamedLaw::positive_stable(0.7).unwrap()),
        (205, NamedLaw::generalized_linnik(1.5, 0.7, 1.0).unwrap()),
    ] {
        let xs = draws(&law, seed, N);
        assert_ks(law.name(), &xs, |x| law.cdf(x).unwrap());
    }
}

#[test]
fn linnik_cdf_matches_extended_precision_values() {
    // 1 − E_ρ(−x^ρ/β), 60-digit evaluation of the defining series
    let cases = [
        (0.5, 1.0, 10.0, 0.829_422_281_674_027_3),
        (0.5, 1.0, 100.0, 0.943_859_007_256_177_4),
        (0.7, 2.0, 5.0, 0.723_508_478_650_953_9),
        (0.3, 1.0, 50.0, 0.800_833_937_461_271_8),
    ];
    for (rho, beta, x, want) in cases {
        let got = NamedLaw::positive_linnik(rho, beta).unwrap().cdf(x).unwrap();
        assert!((got - want).abs() < 1e-9, "({rho}, {beta}, {x}): {got} vs {want}");
    }
}

#[test]
fn mittag_leffler_matches_extended_precision_values() {
    let z = [0.5, 1.0, 2.0, 3.0, 5.0];
    let table = [
        (0.3, [0.632_649_005_943_599_0, 0.456_594_408_329_690_7, 0.290_232_226_167_875_4, 0.211_802_633_196_435_8, 0.137_080_869_020_270_6]),
        (0.5, [0.615_690_344_192_925_9, 0.427_583_576_155_807_0, 0.255_395_676_310_505_7, 0.179_001_151_181_389_9, 0.110_704_637_733_068_6]),
        (0.9, [0.603_405_498_695_861_0, 0.376_066_021_424_641_9, 0.163_528_300_016_930_0, 0.083_888_354_033_773_26, 0.034_431_324_804_098_42]),
        (1.0, [0.606_530_659_712_633_4, 0.367_879_441_171_442_3, 0.135_335_283_236_612_7, 0.049_787_068_367_863_94, 0.006_737_946_999_085_467]),
    ];
    for (rho, want) in table {
        for (zi, w) in z.iter().zip(want) {
            let got = mittag_leffler(rho, -zi).unwrap().value;
            assert!((got - w).abs() < 1e-9, "E_{rho}(-{zi}) = {got}, want {w}");
        }
    }
}

#[test]
fn bessel_i_matches_extended_precision_values() {
    let cases = [
        (0.0, 2.0, 2.279_585_302_336_067_3),
        (1.0, 2.0, 1.590_636_854_637_329_1),
        (0.5, 3.0, 4.614_822_903_407_601),
        (2.5, 10.0, 2028.512_757_391_935_7),
        (-0.5, 0.5, 1.272_389_647_414_849_4),
        (1.7, 40.0, 1.435_971_944_114_418e16),
    ];
    for (nu, x, want) in cases {
        let got = bessel_i(nu, x).unwrap().value;
        assert!(((got - want) / want).abs() < 1e-10, "I_{nu}({x}) = {got}, want {want}");
    }
}

#[test]
fn bessel_density_example() {
    let p = NamedLaw::bessel(1.0).unwrap().pdf(1.0).unwrap();
    let want = (-2.0f64).exp() * bessel_i0(2.0);
    assert!((p - want).abs() < 1e-12);
    assert!((p - 0.308_508_3).abs() < 1e-7);
}

#[test]
fn linnik_with_unit_index_is_exponential() {
    let beta = 2.5;
    let a = draws(&NamedLaw::positive_linnik(1.0, beta).unwrap(), 300, N);
    let b = draws(&NamedLaw::exponential(1.0 / beta).unwrap(), 301, N);
    assert!(ks_two_sample(&a, &b) < ks_two_sample_band_99(N, N));
}

/// P(S > x) = (1/π) Σ_k (−1)^{k+1} Γ(kρ)/k! sin(πkρ) x^{−kρ}.
fn stable_tail_series(rho: f64, x: f64) -> f64 {
    let mut sum = 0.0;
    for k in 1..80 {
        let kf = k as f64;
        let log_mag = ln_gamma(kf * rho) - ln_gamma(kf + 1.0) - kf * rho * x.ln();
        let sign = if k % 2 == 1 { 1.0 } else { -1.0 };
        sum += sign * log_mag.exp() * (PI * kf * rho).sin();
    }
    sum / PI
}

#[test]
fn stable_tails_near_unit_index() {
    // the CDF integrand only moves on a sliver of the angle range here
    for rho in [0.9, 0.95, 0.99] {
        let law = NamedLaw::positive_stable(rho).unwrap();
        for x in [100.0, 363.78, 1e4, 1e6] {
            let want = stable_tail_series(rho, x);
            let sf = law.sf(x).unwrap();
            let cdf = law.cdf(x).unwrap();
            assert!(((sf - want) / want).abs() < 1e-9, "rho {rho}, x {x}: {sf} vs {want}");
            assert!((cdf - (1.0 - want)).abs() < 1e-12, "rho {rho}, x {x}: {cdf}");
        }
    }
}

#[test]
fn ratio_of_half_stable_draws() {
    let s = NamedLaw::positive_stable(0.5).unwrap();
    let mut rng = stream(302, 0);
    let xs: Vec<f64> = (0..N).map(|_| s.sample(&mut rng) / s.sample(&mut rng)).collect();
    assert_ks("stable ratio", &xs, |x| FRAC_2_PI * x.sqrt().atan());
}

#[test]
fn laplace_transforms_match_sample_means() {
    let laws = [
        NamedLaw::exponential(1.5).unwrap(),
        NamedLaw::gamma(0.5, 2.0).unwrap(),
        NamedLaw::positive_stable(0.6).unwrap(),
        NamedLaw::positive_linnik(0.5, 1.0).unwrap(),
        NamedLaw::generalized_linnik(2.0, 0.6, 1.5).unwrap(),
        NamedLaw::bessel(1.0).unwrap(),
        NamedLaw::burr(0.7, 1.0, 2.0).unwrap(),
        NamedLaw::weibull(0.5, 1.0).unwrap(),
        NamedLaw::half_cauchy(),
        NamedLaw::degenerate(0.7).unwrap(),
        NamedLaw::pareto(0.5).unwrap(),
    ];
    for (i, law) in laws.iter().enumerate() {
        let xs = draws(law, 400 + i as u64, N);
        for s in [0.1, 1.0, 10.0] {
            let ys: Vec<f64> = xs.iter().map(|x| (-s * x).exp()).collect();
            let (m, se) = mean_and_se(&ys);
            let want = law.lt(s).unwrap();
            assert!(
                (m - want).abs() <= 4.0 * se + 1e-10,
                "{} at s = {s}: mean {m}, lt {want}, se {se}",
                law.name()
            );
        }
    }
}

#[test]
fn degenerate_sampler_is_constant() {
    let xs = draws(&NamedLaw::degenerate(3.25).unwrap(), 500, 1000);
    assert!(xs.iter().all(|&x| x == 3.25));
}

#[test]
fn quantile_inverts_cdf() {
    for law in [
        NamedLaw::gamma(0.5, 1.0).unwrap(),
        NamedLaw::positive_linnik(0.6, 1.0).unwrap(),
        NamedLaw::burr(0.7, 1.0, 2.0).unwrap(),
        NamedLaw::half_cauchy(),
    ] {
        for u in [0.01, 0.3, 0.5, 0.9, 0.999] {
            if let Some(q) = law.quantile(u) {
                assert!((law.cdf(q).unwrap() - u).abs() < 1e-8, "{} at {u}", law.name());
            }
        }
    }
}
