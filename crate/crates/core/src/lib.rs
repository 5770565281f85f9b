//! Exact verification of value-sharing pairs `(Q∘h, Q̃∘h)` of rational
//! functions composed with an entire or meromorphic `h`.
//!
//! The crate is organised bottom-up: exact fields and polynomials, rational
//! functions on the sphere, sharing certificates, plane curves, Nevanlinna
//! numerics for `Q(e^z)`, and a constraint search for candidate curves.

pub mod catalog;
pub mod curve;
pub mod error;
pub mod field;
pub mod linalg;
pub mod nevanlinna;
pub mod newton;
pub mod numeric;
pub mod parse;
pub mod poly1;
pub mod poly2;
pub mod ratfunc;
pub mod resultant;
pub mod search;
pub mod sharing;
pub mod var;

pub use error::{Error, Result};
pub use field::{Field, FieldElem, Rat, SpherePoint};
pub use poly1::Poly1;
pub use poly2::Poly2;
pub use ratfunc::{Divisor, MobiusMap, PointSet, RatFunc};
pub use var::Var;
