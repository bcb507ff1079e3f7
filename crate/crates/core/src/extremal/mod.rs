//! Desk-scale extremal numbers and the component-partition procedure.

pub mod connection;
pub(crate) mod downsets;
pub mod mu;
pub mod triangles;

pub use connection::{connection_partition, partition_profile, ConnectionPartition, PartitionCheck};
pub use mu::{emc_formula, emc_max_edges, mu_bruteforce, EmcResult, MuResult};
pub use triangles::{count_mono_triangles, mono_triangle_extremum, EdgeColouring2, MonoResult};
