//! End-to-end experiments over degree-stratified BFS roots, Monte Carlo
//! validators, and JSON/CSV reports.
//!
//! All randomness derives from the config seed through per-task streams, so
//! a report depends only on its config: not on thread count or scheduling.

mod config;
mod experiment;
mod validate;

pub use config::{ExperimentConfig, FitConfig, Source, ValidationConfig, MIN_REPLICATES};
pub use experiment::{
    generate_power_law_graph, load_source, run_table1_experiment, write_ccdf, ExperimentReport,
    FitSet, GroupReport, GroupStatus, LoadedGraph, Provenance, TreeSummary, UnderlyingSummary,
};
pub use validate::{
    validate_bounds, validate_pvis, validate_pvis_with, validate_theorem3, validate_theorem4,
    BoundSweep, BoundViolation, Inequality, PvisBin, PvisCurve, Theorem3Row, Theorem3Table,
    Theorem4Row, Theorem4Table, ValidationReport, HIGH_DEGREE, SWEEP_TOLERANCE, THEOREM4_SLACK,
};
