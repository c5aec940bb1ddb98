//! Cluster algebras from triangulated marked surfaces: seeds, snake and band graphs,
//! matching expansions and bases.

pub mod bases;
pub mod cluster;
pub mod expansion;
pub mod laurent;
pub mod matrix;
pub mod snakegraph;
pub mod surface;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
