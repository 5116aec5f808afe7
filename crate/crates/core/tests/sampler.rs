use std::collections::BTreeMap;

use proptest::prelude::*;
use treebias::graphgen::{configuration_model, Graph};
use treebias::sampler::{
    bfs_tree, coupled_bfs, coupled_bfs_with, tree_degree_histogram, TimeCoupling,
};

fn arb_graph() -> impl Strategy<Value = (Graph, usize, u64)> {
    (1usize..=200).prop_flat_map(|n| {
        (
            prop::collection::vec((0..n, 0..n), 0..=3 * n),
            0..n,
            any::<u64>(),
        )
            .prop_map(move |(edges, root, seed)| {
                (Graph::from_edges(n, &edges).unwrap(), root, seed)
            })
    })
}

/// Hop distances by repeated edge relaxation, independent of any queue.
fn brute_force_distances(g: &Graph, root: usize) -> Vec<Option<usize>> {
    let n = g.vertex_count();
    let mut dist = vec![None; n];
    dist[root] = Some(0);
    let edges = g.edges();
    for _ in 0..n {
        let mut changed = false;
        for &(u, v) in &edges {
            for (a, b) in [(u, v), (v, u)] {
                if let Some(da) = dist[a] {
                    if dist[b].is_none_or(|db| db > da + 1) {
                        dist[b] = Some(da + 1);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    dist
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn tree_invariants((g, root, seed) in arb_graph()) {
        let t = bfs_tree(&g, root, seed).unwrap();
        let oracle = brute_force_distances(&g, root);
        let reachable = oracle.iter().filter(|d| d.is_some()).count();
        prop_assert_eq!(t.covered, reachable);

        let edges = t.tree_edges();
        prop_assert_eq!(edges.len(), t.covered - 1);
        let graph_edges = g.edges();
        for &(u, v) in &edges {
            let key = (u.min(v), u.max(v));
            prop_assert!(u != v);
            prop_assert!(graph_edges.binary_search(&key).is_ok());
        }
        for (v, d) in oracle.iter().enumerate() {
            prop_assert!(t.tree_degree[v] as usize <= g.degree(v));
            prop_assert_eq!(t.is_discovered(v), d.is_some());
        }
        // Shortest-path tree: every tree depth equals the graph distance.
        prop_assert_eq!(t.depths(), oracle);
        prop_assert_eq!(tree_degree_histogram(&t).values().sum::<u64>(), t.covered as u64);
        let degree_sum: u64 = t.tree_degree.iter().map(|&d| u64::from(d)).sum();
        prop_assert_eq!(degree_sum, 2 * (t.covered as u64 - 1));
    }

    #[test]
    fn layer_sizes_do_not_depend_on_seed((g, root, seed) in arb_graph(), other in any::<u64>()) {
        let layers = |s: u64| {
            let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
            for d in bfs_tree(&g, root, s).unwrap().depths().into_iter().flatten() {
                *sizes.entry(d).or_default() += 1;
            }
            sizes
        };
        prop_assert_eq!(layers(seed), layers(other));
    }

    #[test]
    fn coupled_records_cover_discovered_vertices((g, root, seed) in arb_graph()) {
        let (t, records) = coupled_bfs(&g, root, seed).unwrap();
        prop_assert_eq!(&t, &bfs_tree(&g, root, seed).unwrap());
        prop_assert_eq!(records.len(), t.covered - 1);
        for r in &records {
            prop_assert!((0.0..=1.0).contains(&r.time_index));
            prop_assert!((r.visible_children as usize) < g.degree(r.vertex));
        }
    }
}

/// Kolmogorov-Smirnov statistic against the CDF `t^i`.
fn ks_statistic(mut xs: Vec<f64>, i: i32) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(j, &x)| {
            let f = x.powi(i);
            (f - j as f64 / n).abs().max(((j + 1) as f64 / n - f).abs())
        })
        .fold(0.0, f64::max)
}

#[test]
fn time_index_of_degree_five_is_max_of_five_uniforms() {
    let g = configuration_model(&vec![5; 2000], 3, false).unwrap();
    // Asymptotic Kolmogorov quantile at the 0.001 level.
    let k_crit = 1.9495;
    for coupling in [TimeCoupling::Independent, TimeCoupling::Rank] {
        let mut times = Vec::new();
        let mut seed = 0;
        while times.len() < 10_000 {
            let (_, records) =
                coupled_bfs_with(&g, (seed as usize * 37) % 2000, seed, coupling).unwrap();
            times.extend(records.iter().map(|r| r.time_index));
            seed += 1;
        }
        let d = ks_statistic(times.clone(), 5);
        let crit = k_crit / (times.len() as f64).sqrt();
        assert!(d < crit, "{coupling:?}: D = {d:.4} >= {crit:.4}");
    }
}
