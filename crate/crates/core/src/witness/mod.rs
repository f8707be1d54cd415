//! Witnesses for non-reversibility: plan construction, independent
//! verification, bounded search, and the ordinal partitions they rely on.

pub mod coloring;
pub mod oracle;
pub mod plan;
pub mod verify;

pub use coloring::{partition_limit, split_prefix, Coloring, Colors};
pub use oracle::{bounded_oracle_search, oracle_search_family, OracleBounds};
pub use plan::{build_witness, WitnessPlan};
pub use verify::{verify_witness, Rejection, VerifySummary, WitnessInput, DEFAULT_DEPTH};
