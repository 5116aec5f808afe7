use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use log::{info, warn};
use rand::seq::index;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, FitConfig, Source};
use super::validate::ValidationReport;
use crate::error::{Error, Result};
use crate::graphgen::{
    configuration_model, giant_component, power_law_distribution, read_edge_list, Graph,
};
use crate::rng::{derive_path, stream, task_rng};
use crate::sampler::{bfs_tree, tree_degree_histogram};
use crate::stats::{
    average_ccdf, ccdf, fit_gamma_mle, fit_gamma_regression, stratify_by_degree, Ccdf, DegreeBand,
    FitMethod, PowerLawFit,
};

/// Configuration-model graph with i.i.d. power-law degrees on `1..=k_max`
/// (default `n - 1`).
pub fn generate_power_law_graph(
    gamma: f64,
    n: usize,
    k_max: Option<u64>,
    seed: u64,
    simplify: bool,
) -> Result<Graph> {
    let k_max = k_max.unwrap_or((n as u64).saturating_sub(1).max(2));
    let dist = power_law_distribution(gamma, k_max)?;
    let degrees = dist.sample_degree_sequence(n, seed)?;
    configuration_model(&degrees, seed, simplify)
}

/// The graph named by a config's source, with the external id of each vertex.
pub struct LoadedGraph {
    pub graph: Graph,
    pub external_ids: Vec<u64>,
    pub warnings: Vec<String>,
}

pub fn load_source(cfg: &ExperimentConfig) -> Result<LoadedGraph> {
    match &cfg.source {
        Source::Synthetic { gamma, n, k_max } => {
            let graph = generate_power_law_graph(*gamma, *n, *k_max, cfg.seed, cfg.simplify)?;
            Ok(LoadedGraph {
                external_ids: (0..graph.vertex_count() as u64).collect(),
                graph,
                warnings: Vec::new(),
            })
        }
        Source::EdgeList { path } => {
            let el = read_edge_list(path)?;
            let mut warnings = Vec::new();
            if el.dropped() > 0 {
                warnings.push(format!(
                    "edge list: dropped {} self-loop(s) and {} duplicate edge(s)",
                    el.dropped_self_loops, el.dropped_duplicates
                ));
            }
            Ok(LoadedGraph {
                graph: el.graph,
                external_ids: el.id_map,
                warnings,
            })
        }
    }
}

/// Fits requested by the config; a fit that cannot be made is recorded in `errors`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitSet {
    pub regression: Option<PowerLawFit>,
    pub mle: Option<PowerLawFit>,
    pub errors: Vec<String>,
}

impl FitSet {
    pub fn compute(curve: &Ccdf, degrees: &[u64], fit: &FitConfig) -> Self {
        let mut errors = Vec::new();
        let mut run = |method: FitMethod| -> Option<PowerLawFit> {
            if !fit.methods.contains(&method) {
                return None;
            }
            let res = match method {
                FitMethod::LoglogRegressionCcdf => fit_gamma_regression(curve, fit.k_min),
                FitMethod::MleHill => fit_gamma_mle(degrees, fit.k_min),
            };
            res.map_err(|e| errors.push(format!("{method}: {e}"))).ok()
        };
        let regression = run(FitMethod::LoglogRegressionCcdf);
        let mle = run(FitMethod::MleHill);
        FitSet {
            regression,
            mle,
            errors,
        }
    }

    /// The regression estimate if present, otherwise the MLE one.
    pub fn primary(&self) -> Option<&PowerLawFit> {
        self.regression.as_ref().or(self.mle.as_ref())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UnderlyingSummary {
    pub source_vertices: usize,
    pub source_edges: usize,
    pub giant_vertices: usize,
    pub giant_edges: usize,
    pub giant_fraction: f64,
    pub max_degree: usize,
    pub mean_degree: f64,
    pub fits: FitSet,
    pub ccdf: Ccdf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TreeSummary {
    /// Vertex id within the giant component.
    pub root: usize,
    /// Vertex id in the source graph or edge-list file.
    pub root_external: u64,
    pub root_degree: usize,
    pub covered: usize,
    pub fits: FitSet,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupStatus {
    Sampled,
    /// Fewer candidates than `roots_per_group`; every candidate was used.
    Exhaustive,
    /// No candidates.
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroupReport {
    pub label: String,
    pub band: DegreeBand,
    pub candidates: usize,
    pub status: GroupStatus,
    pub trees: Vec<TreeSummary>,
    pub averaged_ccdf: Option<Ccdf>,
    /// Regression on the averaged CCDF and MLE on the pooled tree degrees.
    pub fits: FitSet,
    /// Group exponent minus underlying exponent, by regression.
    pub regression_bias: Option<f64>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub seed: u64,
    pub config: ExperimentConfig,
    /// Seconds since the Unix epoch, or `SOURCE_DATE_EPOCH` when set.
    pub timestamp_unix: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub provenance: Provenance,
    pub underlying: UnderlyingSummary,
    pub groups: Vec<GroupReport>,
    pub validation: ValidationReport,
    pub warnings: Vec<String>,
}

impl ExperimentReport {
    /// Largest minus smallest regression exponent across groups that produced one.
    pub fn group_spread(&self) -> Option<f64> {
        let gammas: Vec<f64> = self
            .groups
            .iter()
            .filter_map(|g| g.fits.regression.map(|f| f.gamma_hat))
            .collect();
        let max = gammas.iter().copied().reduce(f64::max)?;
        let min = gammas.iter().copied().reduce(f64::min)?;
        Some(max - min)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    /// Writes `report.json`, `ccdf_underlying.csv`, and `ccdf_group{i}.csv`
    /// for every group with an averaged curve.
    pub fn write_to_dir(&self, dir: impl AsRef<Path>) -> Result<()> {
        let dir = dir.as_ref();
        fs::create_dir_all(dir).map_err(Error::at(dir))?;
        let report = dir.join("report.json");
        fs::write(&report, self.to_json()?).map_err(Error::at(&report))?;
        write_ccdf(&self.underlying.ccdf, &dir.join("ccdf_underlying.csv"))?;
        for (i, group) in self.groups.iter().enumerate() {
            if let Some(curve) = &group.averaged_ccdf {
                write_ccdf(curve, &dir.join(format!("ccdf_group{}.csv", i + 1)))?;
            }
        }
        Ok(())
    }
}

pub fn write_ccdf(curve: &Ccdf, path: &Path) -> Result<()> {
    let mut out = BufWriter::new(File::create(path).map_err(Error::at(path))?);
    curve.write_csv(&mut out)?;
    out.flush()?;
    Ok(())
}

fn timestamp() -> u64 {
    std::env::var("SOURCE_DATE_EPOCH")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or_else(|| {
            SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0)
        })
}

/// Load or generate the graph, keep its giant component, sample BFS trees
/// from random roots in each degree group, and compare the groups' averaged
/// tree CCDFs against the graph's own degree CCDF.
pub fn run_table1_experiment(cfg: &ExperimentConfig) -> Result<ExperimentReport> {
    cfg.validate()?;
    let loaded = load_source(cfg)?;
    let mut warnings = loaded.warnings;
    let source = &loaded.graph;
    let giant = giant_component(source)?;
    let g = &giant.graph;
    info!(
        "graph: {} vertices, giant component {} ({:.3})",
        source.vertex_count(),
        giant.size(),
        giant.fraction()
    );
    let external = |v: usize| loaded.external_ids[giant.original_ids[v]];

    let graph_degrees = g.degrees();
    let graph_ccdf = ccdf(&g.degree_histogram())?;
    let underlying_fits = FitSet::compute(&graph_ccdf, &graph_degrees, &cfg.fit);
    let underlying = UnderlyingSummary {
        source_vertices: source.vertex_count(),
        source_edges: source.edge_count(),
        giant_vertices: g.vertex_count(),
        giant_edges: g.edge_count(),
        giant_fraction: giant.fraction(),
        max_degree: g.max_degree(),
        mean_degree: 2.0 * g.edge_count() as f64 / g.vertex_count() as f64,
        fits: underlying_fits,
        ccdf: graph_ccdf,
    };
    let underlying_gamma = underlying.fits.regression.map(|f| f.gamma_hat);

    let strata = stratify_by_degree(g, &cfg.group_bounds)?;
    let mut groups = Vec::with_capacity(strata.len());
    for (gi, (band, members)) in cfg.group_bounds.iter().zip(&strata).enumerate() {
        let label = format!("group{}", gi + 1);
        let mut group_warnings = Vec::new();
        let (status, roots) = if members.is_empty() {
            group_warnings.push(format!(
                "{label} {band}: no vertices in the giant component; skipped"
            ));
            (GroupStatus::Skipped, Vec::new())
        } else if members.len() < cfg.roots_per_group {
            group_warnings.push(format!(
                "{label} {band}: only {} vertices for {} roots; using all of them",
                members.len(),
                cfg.roots_per_group
            ));
            (GroupStatus::Exhaustive, members.clone())
        } else {
            let mut rng = task_rng(cfg.seed, &[stream::ROOTS, gi as u64]);
            let picked = index::sample(&mut rng, members.len(), cfg.roots_per_group);
            (
                GroupStatus::Sampled,
                picked.into_iter().map(|i| members[i]).collect(),
            )
        };
        for w in &group_warnings {
            warn!("{w}");
        }

        let sampled: Vec<(TreeSummary, Ccdf, Vec<u64>)> = roots
            .par_iter()
            .enumerate()
            .map(|(ti, &root)| {
                let tree = bfs_tree(
                    g,
                    root,
                    derive_path(cfg.seed, &[stream::BFS, gi as u64, ti as u64]),
                )?;
                let curve = ccdf(&tree_degree_histogram(&tree))?;
                let degrees = tree.discovered_degrees();
                let summary = TreeSummary {
                    root,
                    root_external: external(root),
                    root_degree: g.degree(root),
                    covered: tree.covered,
                    fits: FitSet::compute(&curve, &degrees, &cfg.fit),
                };
                Ok((summary, curve, degrees))
            })
            .collect::<Result<_>>()?;

        let (averaged_ccdf, fits) = if sampled.is_empty() {
            (
                None,
                FitSet {
                    regression: None,
                    mle: None,
                    errors: Vec::new(),
                },
            )
        } else {
            let curves: Vec<Ccdf> = sampled.iter().map(|s| s.1.clone()).collect();
            let pooled: Vec<u64> = sampled.iter().flat_map(|s| s.2.iter().copied()).collect();
            let avg = average_ccdf(&curves)?;
            let fits = FitSet::compute(&avg, &pooled, &cfg.fit);
            (Some(avg), fits)
        };
        let regression_bias = match (fits.regression, underlying_gamma) {
            (Some(f), Some(u)) => Some(f.gamma_hat - u),
            _ => None,
        };
        warnings.extend(group_warnings.iter().cloned());
        groups.push(GroupReport {
            label,
            band: *band,
            candidates: members.len(),
            status,
            trees: sampled.into_iter().map(|s| s.0).collect(),
            averaged_ccdf,
            fits,
            regression_bias,
            warnings: group_warnings,
        });
    }

    let validation = ValidationReport::run(g, cfg.replicates, cfg.seed, &cfg.validation)?;

    Ok(ExperimentReport {
        provenance: Provenance {
            tool: "treebias".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            seed: cfg.seed,
            config: cfg.clone(),
            timestamp_unix: timestamp(),
        },
        underlying,
        groups,
        validation,
        warnings,
    })
}
