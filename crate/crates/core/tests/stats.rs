use std::collections::BTreeMap;

use treebias::analytic::hurwitz_zeta;
use treebias::graphgen::power_law_distribution;
use treebias::stats::{ccdf, fit_gamma_mle, fit_gamma_regression, Ccdf};

/// Noise-free CCDF of an unbounded discrete power law on `k_min..=k_max`.
fn exact_tail(gamma: f64, k_min: u64, k_max: u64) -> Ccdf {
    let total = hurwitz_zeta(gamma, k_min as f64);
    Ccdf {
        points: (k_min..=k_max)
            .map(|k| (k, hurwitz_zeta(gamma, k as f64) / total))
            .collect(),
        n: 1,
    }
}

#[test]
fn regression_recovers_exact_tails() {
    for (gamma, tol) in [(2.5, 0.02), (2.126, 0.03)] {
        let fit = fit_gamma_regression(&exact_tail(gamma, 10, 1000), 10).unwrap();
        assert!(
            (fit.gamma_hat - gamma).abs() <= tol,
            "{gamma}: {}",
            fit.gamma_hat
        );
        assert!(fit.r_squared.unwrap() > 0.999);
    }
}

#[test]
fn regression_rejects_a_single_point() {
    let c = Ccdf {
        points: vec![(10, 1.0)],
        n: 1,
    };
    assert!(fit_gamma_regression(&c, 1).is_err());
}

fn draws(gamma: f64, n: usize, seed: u64) -> Vec<u64> {
    power_law_distribution(gamma, 1_000_000)
        .unwrap()
        .sample_degree_sequence(n, seed)
        .unwrap()
}

fn histogram(xs: &[u64]) -> BTreeMap<u64, u64> {
    let mut h = BTreeMap::new();
    for &x in xs {
        *h.entry(x).or_insert(0) += 1;
    }
    h
}

#[test]
fn estimators_agree_within_two_standard_errors() {
    for (i, gamma) in [2.1, 2.5, 2.9].into_iter().enumerate() {
        let xs = draws(gamma, 200_000, 100 + i as u64);
        let mle = fit_gamma_mle(&xs, 10).unwrap();
        let reg = fit_gamma_regression(&ccdf(&histogram(&xs)).unwrap(), 10).unwrap();
        let combined = (mle.standard_error.powi(2) + reg.standard_error.powi(2)).sqrt();
        assert!(
            (mle.gamma_hat - reg.gamma_hat).abs() <= 2.0 * combined,
            "{gamma}: mle {} ± {}, regression {} ± {}",
            mle.gamma_hat,
            mle.standard_error,
            reg.gamma_hat,
            reg.standard_error
        );
    }
}

#[test]
fn fits_are_invariant_to_sample_scale() {
    let xs = draws(2.4, 50_000, 8);
    let doubled: Vec<u64> = xs.iter().chain(&xs).copied().collect();
    let a = fit_gamma_mle(&xs, 10).unwrap();
    let b = fit_gamma_mle(&doubled, 10).unwrap();
    assert!((a.gamma_hat - b.gamma_hat).abs() < 1e-12);

    let scaled: BTreeMap<u64, u64> = histogram(&xs)
        .into_iter()
        .map(|(k, c)| (k, 3 * c))
        .collect();
    let ra = fit_gamma_regression(&ccdf(&histogram(&xs)).unwrap(), 10).unwrap();
    let rb = fit_gamma_regression(&ccdf(&scaled).unwrap(), 10).unwrap();
    assert!((ra.gamma_hat - rb.gamma_hat).abs() < 1e-12);
}

#[test]
fn ccdf_reconstructs_its_histogram() {
    let h = histogram(&draws(2.2, 20_000, 4));
    let c = ccdf(&h).unwrap();
    assert_eq!(c.histogram(), h);
    assert_eq!(c.eval(0), 1.0);
    assert!(c
        .points
        .windows(2)
        .all(|w| w[0].0 < w[1].0 && w[0].1 > w[1].1));
}
