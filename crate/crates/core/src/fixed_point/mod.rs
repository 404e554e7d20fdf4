//! The fixed-point module: vectors supported on marked flags, the box-adding
//! Pieri weights, and the operator engine acting on them.

pub mod ops;
pub mod pieri;
pub mod vector;
pub mod word;

pub use ops::{Engine, Fault};
pub use pieri::{pieri, pieri_lambda_star, pieri_moment_closed};
pub use vector::{BasisTag, KVector};
pub use word::{Gen, OperatorWord};
