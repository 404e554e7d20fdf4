//! Shapes: integer partitions, cells, flags of partitions given by a removal
//! order of boxes, the (μ, a)-index set for flags, and the combinatorial
//! partial order used for leading-term statements.

mod aindex;
mod bruhat;
mod flag;
mod partition;

pub use aindex::AIndex;
pub use bruhat::BruhatPoset;
pub use flag::FlagPoint;
pub use partition::{Cell, Partition};
