//! Constructors for concrete arrangement families.

pub mod diagonal;
pub mod kapranov;
pub mod linalg;
pub mod linear;
pub mod maps;

pub use diagonal::{build_diagonal, set_partitions, SetPartition};
pub use kapranov::{build_kapranov, kapranov_points};
pub use linear::{build_linear, build_linear_from_json, close_under_intersection, LinearSubspace, NamedSubspace};
pub use maps::{build_maps_poset, integer_partitions, maps_poset_with_pairs, IntPartitionPair};
