//! Set partitions, diagram monoids and their ramified and tied extensions:
//! closure under generators, normal forms, presentations by generators and
//! relations, and exact counting.

pub mod brauer;
pub mod closure;
pub mod counting;
pub mod diagram;
pub mod error;
pub mod parallel;
pub mod permutation;
pub mod presentation;
pub mod ramified;
pub mod render;
pub mod set_partition;
pub mod tied_jones;
pub mod sizes;
pub mod store;
mod union_find;
pub mod word;

pub use closure::{closure, closure_sequential, MonoidElement, MonoidTable};
pub use diagram::{Diagram, Point};
pub use error::{Error, Result};
pub use permutation::Permutation;
pub use set_partition::{DoublePartition, SetPartition};
pub use ramified::{Family, Ramified};
pub use word::{Token, Word};
