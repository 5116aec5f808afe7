//! Monte Carlo checks of the predicted tree degrees and exact sweeps of the
//! rigorous inequalities.

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{
    chernoff_threshold_and_eps, exact_weighted_sum, expected_tree_degree, pvis_cubic, pvis_exact,
    pvis_lower_bound, PowerLawModel,
};
use crate::error::{Error, Result};
use crate::graphgen::Graph;
use crate::rng::{derive_path, stream, task_rng};
use crate::sampler::{bfs_tree, coupled_bfs_with, TimeCoupling};

use super::config::MIN_REPLICATES;

/// Smallest degree counted as high.
pub const HIGH_DEGREE: u64 = 18;

/// Allowance below `1 - eps(i)` for Monte Carlo noise and model idealization.
pub const THEOREM4_SLACK: f64 = 0.05;

/// Additive tolerance on the inequality sweeps, covering summation tails.
pub const SWEEP_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, Default)]
struct DegreeTally {
    observations: u64,
    tree_degree_sum: u64,
    children_sum: u64,
    above_threshold: u64,
}

fn check_replicates(g: &Graph, replicates: usize) -> Result<()> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    if replicates < MIN_REPLICATES {
        return Err(Error::InsufficientData {
            what: "validator replicates",
            needed: MIN_REPLICATES,
            got: replicates,
        });
    }
    Ok(())
}

/// Roots drawn uniformly with replacement, one per replicate.
fn random_roots(g: &Graph, replicates: usize, seed: u64, label: u64) -> Vec<usize> {
    let mut rng = task_rng(seed, &[stream::ROOTS, label]);
    (0..replicates)
        .map(|_| rng.random_range(0..g.vertex_count()))
        .collect()
}

/// Per-graph-degree tallies over non-root discovered vertices of
/// `replicates` BFS trees.
fn pooled_tallies(g: &Graph, replicates: usize, seed: u64, label: u64) -> Result<Vec<DegreeTally>> {
    let roots = random_roots(g, replicates, seed, label);
    let width = g.max_degree() + 1;
    let per_tree: Vec<Vec<DegreeTally>> = roots
        .par_iter()
        .enumerate()
        .map(|(r, &root)| {
            let tree = bfs_tree(g, root, derive_path(seed, &[label, r as u64]))?;
            let mut tally = vec![DegreeTally::default(); width];
            for &v in &tree.discovery_order()[1..] {
                let i = g.degree(v);
                let t = &mut tally[i];
                let deg_t = u64::from(tree.tree_degree[v]);
                t.observations += 1;
                t.tree_degree_sum += deg_t;
                t.children_sum += u64::from(tree.children(v));
                if deg_t as f64 >= chernoff_threshold_and_eps(i as u64).threshold {
                    t.above_threshold += 1;
                }
            }
            Ok(tally)
        })
        .collect::<Result<_>>()?;
    let mut total = vec![DegreeTally::default(); width];
    for tally in per_tree {
        for (acc, t) in total.iter_mut().zip(tally) {
            acc.observations += t.observations;
            acc.tree_degree_sum += t.tree_degree_sum;
            acc.children_sum += t.children_sum;
            acc.above_threshold += t.above_threshold;
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem3Row {
    pub degree: u64,
    pub observations: u64,
    /// Mean tree degree, counting the parent edge.
    pub mean_tree_degree: f64,
    /// Mean number of tree children.
    pub mean_children: f64,
    /// `i (i - 1) / (i + 3)`.
    pub predicted: f64,
    /// `(mean_tree_degree - predicted) / predicted`; absent when the
    /// prediction is zero.
    pub relative_gap: Option<f64>,
    /// `(mean_children - predicted) / predicted`.
    pub relative_gap_children: Option<f64>,
    /// Degree 1: the prediction is 0 while a discovered leaf keeps its parent edge.
    pub boundary: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem3Table {
    pub replicates: usize,
    pub min_observations: u64,
    pub rows: Vec<Theorem3Row>,
}

impl Theorem3Table {
    /// Fraction of rows with `degree >= min_degree` whose empirical mean tree
    /// degree is within `[lo, hi]` times the prediction.
    pub fn fraction_within(&self, min_degree: u64, lo: f64, hi: f64) -> Option<f64> {
        let rows: Vec<_> = self
            .rows
            .iter()
            .filter(|r| r.degree >= min_degree)
            .collect();
        if rows.is_empty() {
            return None;
        }
        let ok = rows
            .iter()
            .filter(|r| {
                let ratio = r.mean_tree_degree / r.predicted;
                (lo..=hi).contains(&ratio)
            })
            .count();
        Some(ok as f64 / rows.len() as f64)
    }
}

/// Empirical `E[deg_T | deg_G = i]` over BFS trees from uniformly random
/// roots, against `i (i - 1) / (i + 3)`.
pub fn validate_theorem3(
    g: &Graph,
    replicates: usize,
    seed: u64,
    min_observations: u64,
) -> Result<Theorem3Table> {
    check_replicates(g, replicates)?;
    let tallies = pooled_tallies(g, replicates, seed, stream::THEOREM3)?;
    let rows = tallies
        .iter()
        .enumerate()
        .filter(|(i, t)| *i >= 1 && t.observations >= min_observations.max(1))
        .map(|(i, t)| {
            let i = i as u64;
            let obs = t.observations as f64;
            let predicted = expected_tree_degree(i);
            let mean_tree_degree = t.tree_degree_sum as f64 / obs;
            let mean_children = t.children_sum as f64 / obs;
            let gap = |x: f64| (predicted > 0.0).then(|| (x - predicted) / predicted);
            Theorem3Row {
                degree: i,
                observations: t.observations,
                mean_tree_degree,
                mean_children,
                predicted,
                relative_gap: gap(mean_tree_degree),
                relative_gap_children: gap(mean_children),
                boundary: i == 1,
            }
        })
        .collect();
    Ok(Theorem3Table {
        replicates,
        min_observations,
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem4Row {
    pub degree: u64,
    pub observations: u64,
    /// `m(i) = i (i - 1) / (2 (i + 3))`.
    pub threshold: f64,
    /// Fraction of observations with tree degree at least `m(i)`.
    pub empirical: f64,
    pub epsilon: f64,
    /// `1 - eps(i)`.
    pub bound: f64,
    /// `empirical >= bound - THEOREM4_SLACK`.
    pub meets_bound: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Theorem4Table {
    pub replicates: usize,
    pub min_observations: u64,
    pub slack: f64,
    pub rows: Vec<Theorem4Row>,
    pub all_rows_meet_bound: bool,
}

/// Empirical `Pr[deg_T >= m(i)]` for high degrees `i >= 18`, against `1 - eps(i)`.
pub fn validate_theorem4(
    g: &Graph,
    replicates: usize,
    seed: u64,
    min_observations: u64,
) -> Result<Theorem4Table> {
    check_replicates(g, replicates)?;
    let tallies = pooled_tallies(g, replicates, seed, stream::THEOREM4)?;
    let rows: Vec<Theorem4Row> = tallies
        .iter()
        .enumerate()
        .filter(|(i, t)| *i as u64 >= HIGH_DEGREE && t.observations >= min_observations.max(1))
        .map(|(i, t)| {
            let bound = chernoff_threshold_and_eps(i as u64);
            let empirical = t.above_threshold as f64 / t.observations as f64;
            Theorem4Row {
                degree: i as u64,
                observations: t.observations,
                threshold: bound.threshold,
                empirical,
                epsilon: bound.epsilon,
                bound: 1.0 - bound.epsilon,
                meets_bound: empirical >= 1.0 - bound.epsilon - THEOREM4_SLACK,
            }
        })
        .collect();
    Ok(Theorem4Table {
        replicates,
        min_observations,
        slack: THEOREM4_SLACK,
        all_rows_meet_bound: rows.iter().all(|r| r.meets_bound),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PvisBin {
    pub lo: f64,
    pub hi: f64,
    pub center: f64,
    pub records: u64,
    /// Mean of `visible_children / (i - 1)` over records in the bin.
    pub mean_ratio: Option<f64>,
    /// `center^3`.
    pub predicted: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PvisCurve {
    pub replicates: usize,
    pub coupling: TimeCoupling,
    pub bins: Vec<PvisBin>,
    /// Adjacent non-empty bins whose mean ratio decreases.
    pub inversions: usize,
}

impl PvisCurve {
    pub fn top_ratio(&self) -> Option<f64> {
        self.bins.iter().rev().find_map(|b| b.mean_ratio)
    }

    pub fn bottom_ratio(&self) -> Option<f64> {
        self.bins.iter().find_map(|b| b.mean_ratio)
    }
}

/// Bins coupled-sampler records of degree `i >= 2` by Time and reports the
/// mean fraction of the `i - 1` further copies that became tree edges.
pub fn validate_pvis(g: &Graph, replicates: usize, bins: usize, seed: u64) -> Result<PvisCurve> {
    validate_pvis_with(g, replicates, bins, seed, TimeCoupling::default())
}

pub fn validate_pvis_with(
    g: &Graph,
    replicates: usize,
    bins: usize,
    seed: u64,
    coupling: TimeCoupling,
) -> Result<PvisCurve> {
    check_replicates(g, replicates)?;
    if bins < 5 {
        return Err(Error::invalid(
            "bins",
            format!("must be at least 5, got {bins}"),
        ));
    }
    let roots = random_roots(g, replicates, seed, stream::PVIS);
    let per_tree: Vec<Vec<(u64, f64)>> = roots
        .par_iter()
        .enumerate()
        .map(|(r, &root)| {
            let (_, records) = coupled_bfs_with(
                g,
                root,
                derive_path(seed, &[stream::PVIS, r as u64]),
                coupling,
            )?;
            let mut acc = vec![(0u64, 0.0f64); bins];
            for rec in records.iter().filter(|r| r.graph_degree >= 2) {
                let b = ((rec.time_index * bins as f64) as usize).min(bins - 1);
                acc[b].0 += 1;
                acc[b].1 += f64::from(rec.visible_children) / f64::from(rec.graph_degree - 1);
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let mut total = vec![(0u64, 0.0f64); bins];
    for acc in per_tree {
        for (t, a) in total.iter_mut().zip(acc) {
            t.0 += a.0;
            t.1 += a.1;
        }
    }
    let width = 1.0 / bins as f64;
    let bins: Vec<PvisBin> = total
        .iter()
        .enumerate()
        .map(|(b, &(count, sum))| {
            let lo = b as f64 * width;
            let center = lo + width / 2.0;
            PvisBin {
                lo,
                hi: lo + width,
                center,
                records: count,
                mean_ratio: (count > 0).then(|| sum / count as f64),
                predicted: pvis_cubic(center),
            }
        })
        .collect();
    let filled: Vec<f64> = bins.iter().filter_map(|b| b.mean_ratio).collect();
    let inversions = filled.windows(2).filter(|w| w[1] < w[0]).count();
    Ok(PvisCurve {
        replicates,
        coupling,
        bins,
        inversions,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Inequality {
    /// `C t <= sum_k k a_k t^k`
    WeightedSumLower,
    /// `sum_k k a_k t^k <= mu`
    WeightedSumUpper,
    /// `P_vis(t) >= C^2 / mu^2`
    PvisLower,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundViolation {
    pub inequality: Inequality,
    pub gamma: f64,
    pub t: f64,
    pub lhs: f64,
    pub rhs: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundSweep {
    pub gammas: Vec<f64>,
    pub grid_points: usize,
    pub checks: usize,
    pub violations: Vec<BoundViolation>,
    /// `sum_k k a_k = mu` at `t = 1` within the tolerance, for every gamma.
    pub upper_tight_at_one: bool,
    /// Both sides of the lower weighted-sum bound vanish at `t = 0`.
    pub lower_tight_at_zero: bool,
    pub passed: bool,
}

/// Checks `C t <= sum_k k a_k t^k <= mu` on `t_grid` evenly spaced points of
/// `[0, 1]` and `P_vis(t) >= C^2/mu^2` on the same points except `t = 0`,
/// where visibility is only defined as a limit.
pub fn validate_bounds(gammas: &[f64], t_grid: usize) -> Result<BoundSweep> {
    if t_grid < 2 {
        return Err(Error::invalid(
            "t_grid",
            format!("must be at least 2, got {t_grid}"),
        ));
    }
    let mut violations = Vec::new();
    let mut checks = 0;
    let mut upper_tight_at_one = true;
    let mut lower_tight_at_zero = true;
    for &gamma in gammas {
        let m = PowerLawModel::unbounded(gamma)?;
        let floor = pvis_lower_bound(&m);
        for j in 0..t_grid {
            let t = j as f64 / (t_grid - 1) as f64;
            let sum = exact_weighted_sum(&m, t)?;
            let mut check = |inequality, lhs: f64, rhs: f64| {
                checks += 1;
                if lhs > rhs + SWEEP_TOLERANCE {
                    violations.push(BoundViolation {
                        inequality,
                        gamma,
                        t,
                        lhs,
                        rhs,
                    });
                }
            };
            check(Inequality::WeightedSumLower, m.normalization * t, sum);
            check(Inequality::WeightedSumUpper, sum, m.mean_degree);
            let p = pvis_exact(&m, t)?;
            if !p.origin_limit {
                check(Inequality::PvisLower, floor, p.raw);
            }
            if j == 0 {
                lower_tight_at_zero &= sum == 0.0 && m.normalization * t == 0.0;
            }
            if j == t_grid - 1 {
                upper_tight_at_one &= (sum - m.mean_degree).abs() <= SWEEP_TOLERANCE;
            }
        }
    }
    Ok(BoundSweep {
        gammas: gammas.to_vec(),
        grid_points: t_grid,
        checks,
        passed: violations.is_empty(),
        violations,
        upper_tight_at_one,
        lower_tight_at_zero,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub theorem3: Theorem3Table,
    pub theorem4: Theorem4Table,
    pub pvis: PvisCurve,
    pub bounds: BoundSweep,
}

impl ValidationReport {
    /// Runs all four validators on `g`.
    pub fn run(
        g: &Graph,
        replicates: usize,
        seed: u64,
        cfg: &super::config::ValidationConfig,
    ) -> Result<Self> {
        Ok(ValidationReport {
            theorem3: validate_theorem3(g, replicates, seed, cfg.min_observations)?,
            theorem4: validate_theorem4(g, replicates, seed, cfg.min_observations)?,
            pvis: validate_pvis_with(g, replicates, cfg.pvis_bins, seed, cfg.time_coupling)?,
            bounds: validate_bounds(&cfg.bound_gammas, cfg.t_grid)?,
        })
    }
}
