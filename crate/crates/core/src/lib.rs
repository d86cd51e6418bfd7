//! Out-degree reducing partitions of digraphs: certificate checkers,
//! polynomial solvers, gadget constructions, hardness reductions and
//! exhaustive oracles.

pub mod cnf;
pub mod digraph;
pub mod gadgets;
pub mod generators;
pub mod oracle;
pub mod partition;
pub mod reductions;
pub mod solvers;
pub mod structure;

pub use digraph::{parse_edge_list, Digraph, DigraphError, Graph, ParseError};
pub use partition::{Partition, PartitionError, Verdict, Violation};
