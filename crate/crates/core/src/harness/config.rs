use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sampler::TimeCoupling;
use crate::stats::{default_bands, validate_bands, DegreeBand, FitMethod};

/// Where the underlying graph comes from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum Source {
    /// Configuration-model graph; `k_max` defaults to `n - 1`.
    Synthetic {
        gamma: f64,
        n: usize,
        #[serde(default)]
        k_max: Option<u64>,
    },
    EdgeList {
        path: PathBuf,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FitConfig {
    #[serde(default = "default_k_min")]
    pub k_min: u64,
    #[serde(default = "default_methods")]
    pub methods: Vec<FitMethod>,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig {
            k_min: default_k_min(),
            methods: default_methods(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValidationConfig {
    #[serde(default = "default_pvis_bins")]
    pub pvis_bins: usize,
    #[serde(default = "default_bound_gammas")]
    pub bound_gammas: Vec<f64>,
    #[serde(default = "default_t_grid")]
    pub t_grid: usize,
    /// Degrees pooled fewer times than this are left out of the tables.
    #[serde(default = "default_min_observations")]
    pub min_observations: u64,
    #[serde(default)]
    pub time_coupling: TimeCoupling,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        ValidationConfig {
            pvis_bins: default_pvis_bins(),
            bound_gammas: default_bound_gammas(),
            t_grid: default_t_grid(),
            min_observations: default_min_observations(),
            time_coupling: TimeCoupling::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub source: Source,
    #[serde(default = "default_bands")]
    pub group_bounds: Vec<DegreeBand>,
    #[serde(default = "default_roots_per_group")]
    pub roots_per_group: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub fit: FitConfig,
    /// BFS runs pooled by each Monte Carlo validator.
    #[serde(default = "default_replicates")]
    pub replicates: usize,
    #[serde(default = "default_simplify")]
    pub simplify: bool,
    #[serde(default)]
    pub validation: ValidationConfig,
}

fn default_k_min() -> u64 {
    10
}
fn default_methods() -> Vec<FitMethod> {
    vec![FitMethod::LoglogRegressionCcdf, FitMethod::MleHill]
}
fn default_pvis_bins() -> usize {
    10
}
fn default_bound_gammas() -> Vec<f64> {
    vec![2.1, 2.3, 2.5, 2.7, 2.9]
}
fn default_t_grid() -> usize {
    100
}
fn default_min_observations() -> u64 {
    100
}
fn default_roots_per_group() -> usize {
    10
}
fn default_replicates() -> usize {
    200
}
fn default_simplify() -> bool {
    true
}

/// Fewest BFS runs a Monte Carlo validator accepts.
pub const MIN_REPLICATES: usize = 30;

fn config_err(path: &str, reason: impl Into<String>) -> Error {
    Error::Config {
        path: path.to_string(),
        reason: reason.into(),
    }
}

impl ExperimentConfig {
    /// Defaults for everything but the source.
    pub fn with_source(source: Source) -> Self {
        ExperimentConfig {
            source,
            group_bounds: default_bands(),
            roots_per_group: default_roots_per_group(),
            seed: 0,
            fit: FitConfig::default(),
            replicates: default_replicates(),
            simplify: default_simplify(),
            validation: ValidationConfig::default(),
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let cfg: ExperimentConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            config_err(&path, e.into_inner().to_string())
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a config file; a relative edge-list path is resolved against
    /// the file's directory.
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let mut cfg = Self::from_json(&fs::read_to_string(path).map_err(Error::at(path))?)?;
        if let Source::EdgeList { path: edges } = &mut cfg.source {
            if edges.is_relative() {
                if let Some(dir) = path.parent() {
                    *edges = dir.join(&*edges);
                }
            }
        }
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if let Source::Synthetic { gamma, n, k_max } = &self.source {
            if !(*gamma > 1.0) {
                return Err(config_err(
                    "source.synthetic.gamma",
                    format!("must exceed 1, got {gamma}"),
                ));
            }
            if *n < 2 {
                return Err(config_err(
                    "source.synthetic.n",
                    format!("must be at least 2, got {n}"),
                ));
            }
            if k_max.is_some_and(|k| k < 2) {
                return Err(config_err("source.synthetic.k_max", "must be at least 2"));
            }
        }
        validate_bands(&self.group_bounds)
            .map_err(|e| config_err("group_bounds", e.to_string()))?;
        if self.roots_per_group < 1 {
            return Err(config_err("roots_per_group", "must be at least 1"));
        }
        if self.replicates < MIN_REPLICATES {
            return Err(config_err(
                "replicates",
                format!("must be at least {MIN_REPLICATES}, got {}", self.replicates),
            ));
        }
        if self.fit.k_min < 1 {
            return Err(config_err("fit.k_min", "must be at least 1"));
        }
        if self.fit.methods.is_empty() {
            return Err(config_err("fit.methods", "at least one method is required"));
        }
        if self.validation.pvis_bins < 5 {
            return Err(config_err("validation.pvis_bins", "must be at least 5"));
        }
        if self.validation.t_grid < 2 {
            return Err(config_err("validation.t_grid", "must be at least 2"));
        }
        if let Some((i, g)) = self
            .validation
            .bound_gammas
            .iter()
            .enumerate()
            .find(|(_, g)| !(**g > 2.0))
        {
            return Err(config_err(
                &format!("validation.bound_gammas[{i}]"),
                format!("must exceed 2, got {g}"),
            ));
        }
        Ok(())
    }
}
