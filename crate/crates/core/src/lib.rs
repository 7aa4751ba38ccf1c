//! Cat Herding on graphs: exact solver, prunings, classification,
//! structural analysis, infinite-graph simulation and enumeration.

pub mod budget;
pub mod classifier;
pub mod enumerate;
pub mod generators;
pub mod graph;
pub mod infinite;
pub mod pruning;
pub mod registry;
pub mod solver;
pub mod structure;
pub mod verify;

pub use graph::{parse_graph, EdgeMask, Graph, GraphError, ParseError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LoadError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Spec(#[from] generators::SpecError),
}

/// Reads a graph from a generator spec (`path:8`) or edge-list text.
pub fn load_graph(text: &str) -> Result<Graph, LoadError> {
    let edge_list = text.lines().map(str::trim).any(|l| l.starts_with("p ") || l.starts_with('#'));
    if edge_list {
        Ok(parse_graph(text)?)
    } else {
        Ok(generators::from_spec(text)?)
    }
}
