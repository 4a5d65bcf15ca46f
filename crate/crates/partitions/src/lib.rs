//! Exact combinatorics of Young diagrams.
//!
//! Diagrams are integer partitions stored as weakly decreasing row lengths.
//! Every count returned here is an arbitrary-precision integer; nothing in
//! this crate touches floating point.

mod diagram;
mod lattice;
mod tableau;

pub use diagram::{enumerate_diagrams, irrep_dimension, sw_multiplicity, PartitionError, YoungDiagram};
pub use lattice::{add_box, contains, covers, path_count, paths_between, remove_box, LatticePath};
pub use tableau::{enumerate_standard_tableaux, StandardTableau};
