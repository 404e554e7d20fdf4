//! Exact operator calculus for a pair of q,t-deformed algebras acting on the
//! torus fixed points of parabolic flag Hilbert schemes, together with a
//! polynomial realization on symmetric functions over ℚ(q,t).
//!
//! Everything here is exact: scalars live in ℚ(q,t), represented as reduced
//! fractions of integer polynomials.  There is no floating point, and
//! identity checks never sample or approximate — operators are applied
//! symbolically and asserted equalities cancel to literal zero.

pub mod arith;
pub mod elliptic_hall;
pub mod error;
pub mod fixed_point;
pub mod linalg;
pub mod poly_rep;
pub mod relations;
pub mod shapes;

pub use arith::{Character, QTFraction, QTPoly};
pub use error::{Error, Result};
pub use fixed_point::{BasisTag, Engine, Fault, Gen, KVector, OperatorWord};
pub use linalg::FracMat;
pub use poly_rep::{SymFunc, YPoly};
pub use shapes::{AIndex, BruhatPoset, Cell, FlagPoint, Partition};
