//! Power-law random graphs, single-source BFS tree sampling, and measurement
//! of how much the sampled degree distribution departs from the true one.
//!
//! The crate is organized by pipeline stage:
//!
//! * [`graphgen`]: degree distributions, configuration-model graphs, giant
//!   component extraction, and edge-list files.
//! * [`sampler`]: BFS trees with random tie-breaking and the coupled sampler
//!   that attaches a Time coordinate to each discovered vertex.
//! * [`analytic`]: closed-form predictions for the sampled degrees and the
//!   exact series they approximate.
//! * [`stats`]: CCDFs and exponent estimators.
//! * [`harness`]: end-to-end experiments, Monte Carlo validators, and reports.

// `!(x > bound)` is used on purpose throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod error;
pub mod graphgen;
pub mod harness;
pub mod rng;
pub mod sampler;
pub mod stats;

pub use analytic::PowerLawModel;
pub use error::{Error, Result};
pub use graphgen::{DegreeDistribution, Graph};
pub use sampler::{SampledTree, TimeCoupling, VisibilityRecord};
pub use stats::{Ccdf, DegreeBand, FitMethod, PowerLawFit};
