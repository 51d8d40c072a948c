//! Graphlet-based graph encoding: atlas of small connected templates with
//! automorphism orbits, the inclusion lattice, exact integer frequency
//! conversion matrices, and per-vertex net frequency maps on source graphs.

pub mod atlas;
pub mod conv;
pub mod engine;
pub mod freq;
pub mod graph;
pub mod lattice;
pub mod oracle;
pub mod small;

pub use graph::SourceGraph;
