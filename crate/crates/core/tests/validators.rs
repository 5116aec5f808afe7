use treebias::graphgen::{giant_component, Graph};
use treebias::harness::{
    generate_power_law_graph, validate_bounds, validate_pvis, validate_pvis_with, validate_theorem3,
};
use treebias::TimeCoupling;

fn desk_graph(gamma: f64, seed: u64) -> Graph {
    let g = generate_power_law_graph(gamma, 100_000, None, seed, true).unwrap();
    giant_component(&g).unwrap().graph
}

#[test]
fn bound_sweep_has_no_violations() {
    let sweep = validate_bounds(&[2.1, 2.3, 2.5, 2.7, 2.9], 100).unwrap();
    assert!(sweep.violations.is_empty(), "{:?}", sweep.violations);
    assert!(sweep.upper_tight_at_one && sweep.lower_tight_at_zero);
    assert!(sweep.passed);
}

#[test]
fn theorem3_ratio_is_order_one_for_high_degrees() {
    let g = desk_graph(2.5, 21);
    let table = validate_theorem3(&g, 200, 21, 100).unwrap();
    assert!(!table.rows.is_empty());
    let within = table.fraction_within(18, 0.5, 2.0).unwrap();
    assert!(within >= 0.9, "{within}");
}

// Fresh indices carry no information about discovery order, so the binned
// ratio is flat in Time.
#[test]
fn independent_time_coupling_gives_a_flat_curve() {
    let g = desk_graph(2.5, 1);
    let curve = validate_pvis(&g, 50, 10, 1).unwrap();
    let ratios: Vec<f64> = curve.bins.iter().filter_map(|b| b.mean_ratio).collect();
    let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
    assert!(ratios.iter().all(|r| (r - mean).abs() < 0.05), "{ratios:?}");
}

// Expected shape from the t^3 heuristic. Neither coupling produces it on a
// realized graph; kept runnable with `--ignored`.
#[test]
#[ignore = "the coupled sampler's Time is not the exploration Time of the analytic model"]
fn pvis_curve_rises_to_the_top_bin() {
    let g = desk_graph(2.5, 1);
    for coupling in [TimeCoupling::Independent, TimeCoupling::Rank] {
        let curve = validate_pvis_with(&g, 50, 10, 1, coupling).unwrap();
        assert!(
            curve.top_ratio().unwrap() >= 0.8,
            "{coupling:?}: {:?}",
            curve.top_ratio()
        );
        assert!(
            curve.inversions <= 1,
            "{coupling:?}: {} inversions",
            curve.inversions
        );
    }
}
