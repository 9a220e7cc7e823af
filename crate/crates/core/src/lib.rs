//! Planar Turán numbers for theta graphs and short cycles.

pub mod bounds;
pub mod canon;
pub mod constructions;
pub mod detect;
pub mod graph;
pub mod graph6;
pub mod planar;
pub mod search;
pub mod structure;

pub use graph::{Adjacency, Graph, GraphError, SparseGraph};
