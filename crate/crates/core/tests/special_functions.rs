use fdwave_core::special::{
    compositions, gamma, ml_multivariate, ml_two_param, MLIndex, MultivariateSeries, SeriesControl,
};
use proptest::prelude::*;

#[path = "data/ml_reference.rs"]
mod reference;

fn ctl() -> SeriesControl {
    SeriesControl::default()
}

#[test]
fn two_parameter_matches_high_precision_sums() {
    for &(a, b, z, expect) in reference::TWO_PARAM {
        let v = ml_two_param(a, b, z, &ctl()).unwrap();
        let err = (v - expect).abs();
        assert!(
            err < 1e-11 * (1.0 + expect.abs()),
            "E_({a},{b})({z}) = {v}, reference {expect}"
        );
    }
}

#[test]
fn multivariate_matches_high_precision_sums() {
    for (alphas, beta, z, expect) in reference::MULTIVARIATE {
        let idx = MLIndex::new(alphas.to_vec(), *beta).unwrap();
        let v = ml_multivariate(&idx, z, &ctl()).unwrap();
        assert!(
            (v - expect).abs() < 1e-10,
            "{alphas:?} {beta} {z:?}: {v} vs {expect}"
        );
    }
}

#[test]
fn exponential_and_cosine_identities() {
    for i in 0..=100 {
        let z = -20.0 + 25.0 * i as f64 / 100.0;
        assert!((ml_two_param(1.0, 1.0, z, &ctl()).unwrap() - z.exp()).abs() < 1e-10);
        let x = 10.0 * i as f64 / 100.0;
        assert!((ml_two_param(2.0, 1.0, -x * x, &ctl()).unwrap() - x.cos()).abs() < 1e-10);
    }
}

#[test]
fn decay_bound_at_large_spectral_argument() {
    // index (α - α₁, α) with β = 1 at t = 1, λ = 10⁶
    let idx = MLIndex::new(vec![0.9, 1.0], 1.0).unwrap();
    let at_zero = ml_multivariate(&idx, &[0.0, 0.0], &ctl()).unwrap();
    assert_eq!(at_zero, 1.0);
    let far = ml_multivariate(&idx, &[0.0, -1e6], &ctl()).unwrap();
    assert!(far.abs() < 1e-3);
    for &alpha in &[0.4, 0.8, 1.3, 1.8] {
        let v = ml_two_param(alpha, 1.0, -1e6, &ctl()).unwrap();
        assert!(v.abs() < 1e-3, "alpha {alpha}: {v}");
    }
}

#[test]
fn gamma_reference_points() {
    assert_eq!(gamma(1.0).unwrap(), 1.0);
    assert_eq!(gamma(5.0).unwrap(), 24.0);
    assert!((gamma(0.5).unwrap() - std::f64::consts::PI.sqrt()).abs() < 1e-15);
}

#[test]
fn evaluation_is_deterministic() {
    let idx = MLIndex::new(vec![0.4, 1.2, 1.7], 1.1).unwrap();
    let z = [0.2, -0.7, -1.3];
    let a = ml_multivariate(&idx, &z, &ctl()).unwrap();
    let b = ml_multivariate(&idx, &z, &ctl()).unwrap();
    assert_eq!(a.to_bits(), b.to_bits());
}

fn binomial(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

proptest! {
    #[test]
    fn multinomial_weights_sum_to_power(k in 0usize..=8, xs in prop::collection::vec(-2.0f64..2.0, 1..=4)) {
        let fact = |n: usize| (1..=n).fold(1.0, |a, i| a * i as f64);
        let mut s = 0.0;
        for l in compositions(k, xs.len()) {
            let mut w = fact(k);
            for (j, &lj) in l.iter().enumerate() {
                w *= xs[j].powi(lj as i32) / fact(lj);
            }
            s += w;
        }
        let direct = xs.iter().sum::<f64>().powi(k as i32);
        prop_assert!((s - direct).abs() <= 1e-10 * (1.0 + direct.abs()));
    }

    #[test]
    fn composition_count_is_stars_and_bars(k in 0usize..=12, parts in 1usize..=5) {
        let all: Vec<_> = compositions(k, parts).collect();
        prop_assert_eq!(all.len() as f64, binomial((k + parts - 1) as u64, (parts - 1) as u64));
        prop_assert!(all.iter().all(|c| c.len() == parts && c.iter().sum::<usize>() == k));
        let mut sorted = all.clone();
        sorted.dedup();
        prop_assert_eq!(sorted.len(), all.len());
    }

    #[test]
    fn one_variable_series_agrees_with_two_parameter_route(
        alpha in 0.6f64..2.0, beta in 0.3f64..3.0, z in -2.0f64..3.0,
    ) {
        let idx = MLIndex::new(vec![alpha], beta).unwrap();
        let series = MultivariateSeries::new(idx).evaluate(&[z], &ctl()).unwrap();
        let direct = ml_two_param(alpha, beta, z, &ctl()).unwrap();
        prop_assert!((series - direct).abs() <= 1e-12 * (1.0 + direct.abs()));
    }
}
