use rand::seq::SliceRandom;

use super::graph::Graph;
use crate::error::{Error, Result};
use crate::rng::{stream, task_rng};

/// Realizes a degree sequence by a uniform random perfect matching of stubs.
///
/// With `simplify = false` the result is a multigraph whose degrees equal the
/// input exactly. With `simplify = true` self-loops and repeated pairs are
/// removed after matching, so degrees can only go down.
pub fn configuration_model(degrees: &[u64], seed: u64, simplify: bool) -> Result<Graph> {
    let total: u64 = degrees.iter().sum();
    if total % 2 == 1 {
        return Err(Error::OddDegreeSum(total));
    }
    let mut stubs = Vec::with_capacity(total as usize);
    for (v, &d) in degrees.iter().enumerate() {
        stubs.extend(std::iter::repeat_n(v, d as usize));
    }
    let mut rng = task_rng(seed, &[stream::MATCHING]);
    // A uniform shuffle paired off consecutively is a uniform perfect matching.
    stubs.shuffle(&mut rng);
    let edges: Vec<(usize, usize)> = stubs.chunks_exact(2).map(|p| (p[0], p[1])).collect();
    if simplify {
        Graph::from_edges_simple(degrees.len(), &edges)
    } else {
        Graph::from_edges(degrees.len(), &edges)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge() {
        let g = configuration_model(&[1, 1], 0, false).unwrap();
        assert_eq!(g.edges(), vec![(0, 1)]);
    }

    #[test]
    fn odd_sum_rejected() {
        assert!(matches!(
            configuration_model(&[1, 2], 0, true),
            Err(Error::OddDegreeSum(3))
        ));
    }

    #[test]
    fn regular_multigraph_keeps_degrees() {
        for seed in 0..50 {
            let g = configuration_model(&[3, 3, 3, 3], seed, false).unwrap();
            assert!((0..4).all(|v| g.degree(v) == 3));
        }
    }

    #[test]
    fn two_by_two_outcomes() {
        let g = configuration_model(&[2, 2], 5, false).unwrap();
        let e = g.edges();
        assert!(e == vec![(0, 1), (0, 1)] || e == vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn zero_degrees_allowed() {
        let g = configuration_model(&[0, 1, 0, 1], 3, true).unwrap();
        assert_eq!(g.edges(), vec![(1, 3)]);
        assert_eq!(g.degree(0), 0);
    }
}
