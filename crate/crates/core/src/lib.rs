//! Frobenius-twisted counts of noncollinear point configurations in the
//! projective plane over finite fields, and the equivariant cohomology of the
//! configuration spaces recovered from them.

pub mod arith;
pub mod cache;
pub mod census;
pub mod characters;
pub mod enumerate;
pub mod errata;
pub mod field;
pub mod formulas;
pub mod partition;
pub mod plane;
pub mod poly;
pub mod solver;
pub mod verify;

pub use field::{FieldContext, FieldElement, FieldError};
pub use partition::{CycleType, Partition};
pub use plane::{Genericity, Plane, ProjLine, ProjPoint};
pub use poly::QPolynomial;
