//! Structured point sets with decidable membership.

pub mod descriptor;
pub mod families;
pub mod lattice;
pub mod primes;
pub mod window;

pub use descriptor::{dense_group_contains, module_contains, parity_class, parity_class_int, SetDescriptor};
pub use lattice::Lattice;
pub use window::Window;
