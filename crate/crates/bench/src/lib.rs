//! Shared fixtures for the criterion benches.

use treebias::graphgen::{giant_component, power_law_distribution, Graph};
use treebias::harness::generate_power_law_graph;

/// Giant component of a simplified configuration-model graph.
pub fn desk_graph(gamma: f64, n: usize, seed: u64) -> Graph {
    let g = generate_power_law_graph(gamma, n, None, seed, true).expect("valid parameters");
    giant_component(&g).expect("non-empty graph").graph
}

/// `n` i.i.d. degrees from a power law truncated at `k_max`.
pub fn power_law_draws(gamma: f64, n: usize, k_max: u64, seed: u64) -> Vec<u64> {
    power_law_distribution(gamma, k_max)
        .and_then(|d| d.sample_degree_sequence(n, seed))
        .expect("valid parameters")
}
