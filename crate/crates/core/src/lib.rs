//! Exact checking and exhaustive search for community structures in small
//! graphs.
//!
//! A *community structure* splits the vertices of a graph into parts such
//! that every vertex sees a larger share of its own part than of any other
//! part. This crate
//!
//! - checks partitions exactly, with integer arithmetic and a witness for
//!   every failure ([`check_partition`]);
//! - searches all bipartitions for a 2-community structure, optionally
//!   connected or balanced ([`find_2cs`], [`enumerate_2cs`]), with a tree
//!   algorithm and a local-search heuristic on the side;
//! - builds and verifies a family of graphs that admit no 2-community
//!   structure at all ([`family`]);
//! - runs censuses over graph6 files or an internal generator ([`census`]).
//!
//! ```
//! use comstruct::{find_2cs, named, Outcome, SolveOptions};
//!
//! let g = named::planar_counterexample();
//! let res = find_2cs(&g, &SolveOptions::relaxed()).unwrap();
//! assert_eq!(res.outcome, Outcome::NotFound);
//! assert_eq!(res.partitions_examined, 511);
//! ```

pub mod census;
pub mod community;
pub mod family;
pub mod graph;
pub mod graph6;
pub mod iso;
pub mod named;
pub mod solver;

pub use community::{
    check_partition, unsatisfied_set, vertex_satisfied, Bipartition, Failure, Mode, Partition,
    PartitionError, Verdict, Witness,
};
pub use graph::{Graph, GraphError, VertexSet};
pub use graph6::{emit_graph6, parse_graph6};
pub use iso::are_isomorphic;
pub use solver::{
    enumerate_2cs, find_2cs, greedy_cut_heuristic, tree_connected_2cs, Outcome, SolveError,
    SolveOptions, SolveResult,
};

// The guide's code blocks run as doctests through these modules.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/communities.md")]
    mod communities {}
    #[doc = include_str!("../../../book/src/searching.md")]
    mod searching {}
    #[doc = include_str!("../../../book/src/family.md")]
    mod family {}
    #[doc = include_str!("../../../book/src/census.md")]
    mod census {}
    #[doc = include_str!("../../../book/src/formats.md")]
    mod formats {}
}
