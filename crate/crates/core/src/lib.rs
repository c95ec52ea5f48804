//! Graphs, interval models, class recognition and exact boxicity for small graphs,
//! plus the layered tree family `T_k` whose bipartite powers are chordal
//! bipartite with growing boxicity.

pub mod bitset;
pub mod certificate;
pub mod constructions;
pub mod error;
pub mod graph;
pub mod interval;
pub mod io;
pub mod random;
pub mod recognition;
pub mod solver;
pub mod tree;

pub use bitset::VertexSet;
pub use error::{Error, Result};
pub use graph::{Bipartition, Graph, InducedSubgraph, Side};
pub use interval::{BoxRep, Interval, IntervalRep};
pub use tree::RootedTree;
