//! Degree distributions, configuration-model graphs, and edge-list ingestion.

mod components;
mod config_model;
mod distribution;
mod edgelist;
mod graph;

pub use components::{connected_components, giant_component, GiantComponent};
pub use config_model::configuration_model;
pub use distribution::{power_law_distribution, sample_degree_sequence, DegreeDistribution};
pub use edgelist::{
    parse_edge_list, read_edge_list, read_id_map, write_edge_list, write_edges, write_id_map,
    EdgeList,
};
pub use graph::Graph;
