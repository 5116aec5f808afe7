use statrs::distribution::{ChiSquared, ContinuousCDF};
use treebias::graphgen::{
    configuration_model, giant_component, power_law_distribution, read_edge_list, read_id_map,
    write_edge_list, write_id_map, Graph,
};

#[test]
fn degree_sequence_passes_chi_square() {
    let dist = power_law_distribution(2.5, 1000).unwrap();
    let n = 1_000_000;
    let degrees = dist.sample_degree_sequence(n, 2024).unwrap();
    assert_eq!(degrees.len(), n);
    // The parity repair can bump one vertex past k_max; fold it back.
    let overflow = degrees.iter().filter(|&&d| d > 1000).count();
    assert!(overflow <= 1);
    let mut counts = vec![0u64; 1001];
    for &d in &degrees {
        counts[d.min(1000) as usize] += 1;
    }

    // Merge the tail so every bin expects at least 5 draws.
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let (mut obs, mut exp) = (0.0, 0.0);
    for k in 1..=1000u64 {
        obs += counts[k as usize] as f64;
        exp += dist.mass(k) * n as f64;
        if exp >= 5.0 {
            bins.push((obs, exp));
            obs = 0.0;
            exp = 0.0;
        }
    }
    if exp > 0.0 {
        let last = bins.last_mut().unwrap();
        last.0 += obs;
        last.1 += exp;
    }
    let stat: f64 = bins.iter().map(|(o, e)| (o - e).powi(2) / e).sum();
    let df = (bins.len() - 1) as f64;
    let critical = ChiSquared::new(df).unwrap().inverse_cdf(0.999);
    assert!(
        stat < critical,
        "chi-square {stat:.1} >= {critical:.1} with {df} dof"
    );
}

#[test]
fn degree_one_fraction_matches_mass() {
    let dist = power_law_distribution(2.5, 99_999).unwrap();
    let degrees = dist.sample_degree_sequence(100_000, 5).unwrap();
    let ones = degrees.iter().filter(|&&d| d == 1).count() as f64 / degrees.len() as f64;
    assert!(
        (ones - dist.mass(1)).abs() <= 0.01,
        "{ones} vs {}",
        dist.mass(1)
    );
}

#[test]
fn sampled_sequences_have_even_sum() {
    let dist = power_law_distribution(2.2, 500).unwrap();
    for seed in 0..50 {
        let s: u64 = dist
            .sample_degree_sequence(1001, seed)
            .unwrap()
            .iter()
            .sum();
        assert_eq!(s % 2, 0);
    }
}

#[test]
fn double_edge_frequency_is_two_thirds() {
    let trials = 100_000u64;
    let doubles = (0..trials)
        .filter(|&seed| {
            let g = configuration_model(&[2, 2], seed, false).unwrap();
            assert_eq!(g.degrees(), vec![2, 2]);
            g.edges() == vec![(0, 1), (0, 1)]
        })
        .count();
    let freq = doubles as f64 / trials as f64;
    assert!((freq - 2.0 / 3.0).abs() <= 0.01, "{freq}");
}

#[test]
fn unsimplified_model_preserves_degrees() {
    let dist = power_law_distribution(2.3, 300).unwrap();
    for seed in 0..20 {
        let degrees = dist.sample_degree_sequence(2000, seed).unwrap();
        let g = configuration_model(&degrees, seed, false).unwrap();
        assert_eq!(g.degrees(), degrees);
        let s = configuration_model(&degrees, seed, true).unwrap();
        assert!(s.is_simple());
        assert!(s.degrees().iter().zip(&degrees).all(|(a, b)| a <= b));
    }
}

fn giant_fraction(seed: u64) -> f64 {
    let n = 100_000;
    let dist = power_law_distribution(2.5, n as u64 - 1).unwrap();
    let degrees = dist.sample_degree_sequence(n, seed).unwrap();
    let g = configuration_model(&degrees, seed, true).unwrap();
    giant_component(&g).unwrap().fraction()
}

#[test]
fn giant_fraction_is_reproducible_across_seeds() {
    let (a, b) = (giant_fraction(11), giant_fraction(12));
    assert!(a > 0.5 && a < 0.8, "{a}");
    assert!((a - b).abs() / a <= 0.02, "{a} vs {b}");
}

#[test]
fn edge_list_round_trip_on_disk() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    std::fs::write(&path, "# sparse ids\n40 7\n7 40\n40 40\n7 1000\n1000 3\n").unwrap();
    let el = read_edge_list(&path).unwrap();
    assert_eq!(el.id_map, vec![3, 7, 40, 1000]);
    assert_eq!(el.dropped_duplicates, 1);
    assert_eq!(el.dropped_self_loops, 1);

    let out = dir.path().join("out.txt");
    write_edge_list(&el.graph, &out).unwrap();
    let again = read_edge_list(&out).unwrap();
    assert_eq!(again.graph, el.graph);
    assert_eq!(again.dropped(), 0);

    let map = dir.path().join("ids.csv");
    write_id_map(&el.id_map, &map).unwrap();
    assert_eq!(read_id_map(&map).unwrap(), el.id_map);
}

#[test]
fn giant_component_of_two_pieces() {
    let mut edges: Vec<(usize, usize)> = (0..6).map(|v| (v, v + 1)).collect();
    edges.extend([(7, 8), (8, 9)]);
    let g = Graph::from_edges(10, &edges).unwrap();
    let giant = giant_component(&g).unwrap();
    assert_eq!(giant.size(), 7);
    assert!(giant.graph.is_connected());
}
