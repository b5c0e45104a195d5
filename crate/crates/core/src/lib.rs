//! Exact computations with bound quivers and their graded path algebras:
//! n-translation structures, Koszul complexes, quadratic duals, trivial
//! extensions, smash-product quivers, τ-hammocks and almost-split data.

pub mod algebra;
pub mod cli;
pub mod construct;
pub mod dual;
pub mod error;
pub mod field;
pub mod format;
pub mod hammock;
pub mod koszul;
pub mod linalg;
pub mod quiver;
pub mod resolution;
pub mod translation;

pub use algebra::{GradedBasis, Loewy};
pub use error::{Error, Result};
pub use field::{Field, Scalar};
pub use format::{export_dot, parse_quiver, serialize_quiver};
pub use quiver::{opposite, validate, Arrow, ArrowId, BoundQuiver, Element, Path, VertexId};
