use std::collections::VecDeque;

use super::graph::Graph;
use crate::error::{Error, Result};

/// Component label per vertex; labels are dense and ordered by smallest member.
pub fn connected_components(g: &Graph) -> (Vec<usize>, usize) {
    let n = g.vertex_count();
    let mut label = vec![usize::MAX; n];
    let mut count = 0;
    let mut queue = VecDeque::new();
    for start in 0..n {
        if label[start] != usize::MAX {
            continue;
        }
        label[start] = count;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if label[w] == usize::MAX {
                    label[w] = count;
                    queue.push_back(w);
                }
            }
        }
        count += 1;
    }
    (label, count)
}

/// Largest connected component, relabeled `0..size` in increasing order of
/// the original ids.
#[derive(Debug, Clone)]
pub struct GiantComponent {
    pub graph: Graph,
    /// `original_ids[new] = old`.
    pub original_ids: Vec<usize>,
    /// Vertex count of the graph the component was taken from.
    pub source_vertices: usize,
}

impl GiantComponent {
    pub fn size(&self) -> usize {
        self.original_ids.len()
    }

    pub fn fraction(&self) -> f64 {
        self.size() as f64 / self.source_vertices as f64
    }
}

/// Ties between equally large components go to the one with the smallest vertex.
pub fn giant_component(g: &Graph) -> Result<GiantComponent> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let (label, count) = connected_components(g);
    let mut sizes = vec![0usize; count];
    for &l in &label {
        sizes[l] += 1;
    }
    // max_by_key keeps the last maximum; iterate in reverse to keep the first.
    let best = (0..count).rev().max_by_key(|&c| sizes[c]).unwrap();

    let mut new_id = vec![usize::MAX; n];
    let mut original_ids = Vec::with_capacity(sizes[best]);
    for v in 0..n {
        if label[v] == best {
            new_id[v] = original_ids.len();
            original_ids.push(v);
        }
    }
    let edges: Vec<(usize, usize)> = g
        .edges()
        .into_iter()
        .filter(|&(u, _)| label[u] == best)
        .map(|(u, v)| (new_id[u], new_id[v]))
        .collect();
    let graph = Graph::from_edges(original_ids.len(), &edges)?;
    Ok(GiantComponent {
        graph,
        original_ids,
        source_vertices: n,
    })
}
