use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};

/// Undirected graph in compressed adjacency form.
///
/// Parallel edges appear once per multiplicity in each endpoint's neighbor
/// list, and a self-loop at `v` appears twice in `v`'s own list, so
/// `degree(v) == neighbors(v).len()` in every case. Neighbor lists are sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    simple: bool,
    connected: bool,
}

impl Graph {
    /// Builds a graph on `n` vertices from an edge list. Edges are kept with
    /// their multiplicity; use [`Graph::from_edges_simple`] to drop loops and
    /// duplicates.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut degree = vec![0usize; n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            degree[u] += 1;
            degree[v] += 1;
        }
        let mut offsets = Vec::with_capacity(n + 1);
        offsets.push(0);
        for d in &degree {
            offsets.push(offsets.last().unwrap() + d);
        }
        let mut fill = offsets[..n].to_vec();
        let mut targets = vec![0usize; offsets[n]];
        for &(u, v) in edges {
            targets[fill[u]] = v;
            fill[u] += 1;
            targets[fill[v]] = u;
            fill[v] += 1;
        }
        for v in 0..n {
            targets[offsets[v]..offsets[v + 1]].sort_unstable();
        }

        let simple = (0..n).all(|v| {
            let adj = &targets[offsets[v]..offsets[v + 1]];
            adj.iter().all(|&w| w != v) && adj.windows(2).all(|p| p[0] != p[1])
        });
        let mut g = Graph {
            offsets,
            targets,
            simple,
            connected: false,
        };
        g.connected = n > 0 && g.reachable_count(0) == n;
        Ok(g)
    }

    /// Builds a simple graph: self-loops and repeated pairs are discarded.
    pub fn from_edges_simple(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut kept: Vec<(usize, usize)> = edges
            .iter()
            .filter(|(u, v)| u != v)
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        kept.sort_unstable();
        kept.dedup();
        Self::from_edges(n, &kept)
    }

    pub fn vertex_count(&self) -> usize {
        self.offsets.len() - 1
    }

    /// Number of edges, counting multiplicity and self-loops once each.
    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.offsets[v + 1] - self.offsets[v]
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.targets[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn degrees(&self) -> Vec<u64> {
        (0..self.vertex_count())
            .map(|v| self.degree(v) as u64)
            .collect()
    }

    pub fn degree_histogram(&self) -> BTreeMap<u64, u64> {
        let mut hist = BTreeMap::new();
        for v in 0..self.vertex_count() {
            *hist.entry(self.degree(v) as u64).or_insert(0) += 1;
        }
        hist
    }

    pub fn max_degree(&self) -> usize {
        (0..self.vertex_count())
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    /// No self-loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        self.simple
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    /// Edges as `(u, v)` with `u <= v`, once per multiplicity, in sorted order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.vertex_count() {
            let mut loops = 0usize;
            for &v in self.neighbors(u) {
                if v > u {
                    out.push((u, v));
                } else if v == u {
                    loops += 1;
                    if loops.is_multiple_of(2) {
                        out.push((u, u));
                    }
                }
            }
        }
        out
    }

    pub(crate) fn reachable_count(&self, root: usize) -> usize {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        let mut count = 1;
        while let Some(u) = queue.pop_front() {
            for &w in self.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    queue.push_back(w);
                }
            }
        }
        count
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.vertex_count() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.vertex_count(),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn self_loop_counts_twice() {
        let g = Graph::from_edges(2, &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.degree(1), 1);
        assert!(!g.is_simple());
        assert_eq!(g.edges(), vec![(0, 0), (0, 1)]);
    }

    #[test]
    fn parallel_edges_kept_with_multiplicity() {
        let g = Graph::from_edges(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.neighbors(0), &[1, 1]);
        assert_eq!(g.edge_count(), 2);
        assert!(!g.is_simple());
        let s = Graph::from_edges_simple(2, &[(0, 1), (1, 0), (1, 1)]).unwrap();
        assert_eq!(s.edges(), vec![(0, 1)]);
        assert!(s.is_simple());
    }

    #[test]
    fn connectivity_flag() {
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(path.is_connected());
        let split = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(!split.is_connected());
        assert!(!Graph::from_edges(0, &[]).unwrap().is_connected());
    }

    #[test]
    fn out_of_range_vertex_rejected() {
        assert!(matches!(
            Graph::from_edges(2, &[(0, 2)]),
            Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
        ));
    }
}
