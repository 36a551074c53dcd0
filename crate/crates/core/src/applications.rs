//! Things symmetric complete sum-free sets are good for.

pub mod cameron;
pub mod cayley;
pub mod dioid;

pub use cameron::{simulate_random_sumfree, ProcessConfig, SimulationReport};
pub use cayley::{CayleyGraph, GraphProperties};
pub use dioid::{dioid_partition, PartitionReport};
