//! Single-source BFS tree sampling.
//!
//! A BFS tree keeps exactly the first-discovery edges. Which edge discovers a
//! vertex depends on the order neighbor lists are scanned; every scan here is
//! a fresh uniform permutation drawn from the run's seed.

use std::collections::{BTreeMap, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::graphgen::Graph;
use crate::rng::{stream, task_rng};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledTree {
    pub root: usize,
    pub parent: Vec<Option<usize>>,
    /// Tree edges incident to each vertex; zero for undiscovered vertices.
    pub tree_degree: Vec<u32>,
    pub discovery_rank: Vec<Option<usize>>,
    /// Number of discovered vertices, including the root.
    pub covered: usize,
    order: Vec<usize>,
}

impl SampledTree {
    pub fn is_discovered(&self, v: usize) -> bool {
        self.discovery_rank[v].is_some()
    }

    /// Tree children of `v`: its tree degree minus the parent edge.
    pub fn children(&self, v: usize) -> u32 {
        self.tree_degree[v] - u32::from(self.parent[v].is_some())
    }

    /// Discovered vertices in discovery order; the root comes first.
    pub fn discovery_order(&self) -> &[usize] {
        &self.order
    }

    /// `(parent, child)` pairs in the child's discovery order.
    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        self.order
            .iter()
            .filter_map(|&v| self.parent[v].map(|p| (p, v)))
            .collect()
    }

    /// Tree degrees of discovered vertices, in discovery order.
    pub fn discovered_degrees(&self) -> Vec<u64> {
        self.order
            .iter()
            .map(|&v| u64::from(self.tree_degree[v]))
            .collect()
    }

    /// Distance from the root along tree edges.
    pub fn depths(&self) -> Vec<Option<usize>> {
        let mut depth = vec![None; self.parent.len()];
        for &v in &self.order {
            depth[v] = Some(match self.parent[v] {
                None => 0,
                Some(p) => depth[p].expect("parent discovered first") + 1,
            });
        }
        depth
    }
}

pub fn bfs_tree(g: &Graph, root: usize, seed: u64) -> Result<SampledTree> {
    g.check_vertex(root)?;
    let n = g.vertex_count();
    let mut rng = task_rng(seed, &[stream::BFS]);
    let mut parent = vec![None; n];
    let mut tree_degree = vec![0u32; n];
    let mut discovery_rank = vec![None; n];
    let mut order = Vec::new();
    let mut queue = VecDeque::new();
    let mut scratch = Vec::new();

    discovery_rank[root] = Some(0);
    order.push(root);
    queue.push_back(root);
    while let Some(u) = queue.pop_front() {
        scratch.clear();
        scratch.extend_from_slice(g.neighbors(u));
        scratch.shuffle(&mut rng);
        for &w in &scratch {
            if discovery_rank[w].is_none() {
                discovery_rank[w] = Some(order.len());
                order.push(w);
                parent[w] = Some(u);
                tree_degree[u] += 1;
                tree_degree[w] += 1;
                queue.push_back(w);
            }
        }
    }
    Ok(SampledTree {
        root,
        parent,
        tree_degree,
        discovery_rank,
        covered: order.len(),
        order,
    })
}

/// One discovered non-root vertex as seen by the coupled sampler.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VisibilityRecord {
    pub vertex: usize,
    pub graph_degree: u32,
    /// Maximum of the vertex's copy indices, each uniform on `[0, 1]`.
    pub time_index: f64,
    pub visible_children: u32,
}

/// How copy-index Times are attached to discovered vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimeCoupling {
    /// Each vertex gets its own fresh maximum of `i` uniforms, unrelated to
    /// when BFS reached it.
    #[default]
    Independent,
    /// The same draws, pooled per degree class and handed out in decreasing
    /// order of discovery: earlier vertices get later (larger) Times.
    Rank,
}

/// BFS sample plus a Time coordinate per discovered non-root vertex, using
/// [`TimeCoupling::Independent`].
pub fn coupled_bfs(
    g: &Graph,
    root: usize,
    seed: u64,
) -> Result<(SampledTree, Vec<VisibilityRecord>)> {
    coupled_bfs_with(g, root, seed, TimeCoupling::Independent)
}

/// The tree is exactly [`bfs_tree`] for the same seed. Every discovered
/// non-root vertex of degree `i` contributes one draw of the largest of `i`
/// uniform copy indices, so a degree-`i` vertex has Time density `i t^(i-1)`
/// under either coupling. Records come out in discovery order.
pub fn coupled_bfs_with(
    g: &Graph,
    root: usize,
    seed: u64,
    coupling: TimeCoupling,
) -> Result<(SampledTree, Vec<VisibilityRecord>)> {
    let tree = bfs_tree(g, root, seed)?;
    let mut rng = task_rng(seed, &[stream::COPY_INDEX]);
    let discovered = &tree.order[1..];
    let mut times: Vec<f64> = discovered
        .iter()
        .map(|&v| {
            (0..g.degree(v))
                .map(|_| rng.random::<f64>())
                .fold(0.0, f64::max)
        })
        .collect();
    if coupling == TimeCoupling::Rank {
        let mut classes: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for (pos, &v) in discovered.iter().enumerate() {
            classes.entry(g.degree(v)).or_default().push(pos);
        }
        for positions in classes.values() {
            let mut draws: Vec<f64> = positions.iter().map(|&p| times[p]).collect();
            draws.sort_unstable_by(|a, b| b.total_cmp(a));
            for (&p, t) in positions.iter().zip(draws) {
                times[p] = t;
            }
        }
    }
    let records = discovered
        .iter()
        .zip(times)
        .map(|(&v, time_index)| VisibilityRecord {
            vertex: v,
            graph_degree: g.degree(v) as u32,
            time_index,
            visible_children: tree.children(v),
        })
        .collect();
    Ok((tree, records))
}

/// Counts of tree degree over discovered vertices.
pub fn tree_degree_histogram(t: &SampledTree) -> BTreeMap<u64, u64> {
    let mut hist = BTreeMap::new();
    for &v in &t.order {
        *hist.entry(u64::from(t.tree_degree[v])).or_insert(0) += 1;
    }
    hist
}
