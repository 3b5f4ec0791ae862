//! Exact local computations on commutative noetherian DG-rings given as towers
//! of quotient rings, trivial extensions and Koszul extensions over a
//! polynomial ring, localized at a rational point.

pub mod dg;
pub mod error;
pub mod field;
pub mod groebner;
pub mod linalg;
pub mod module;
pub mod monomial;
pub mod poly;
pub mod regularity;
pub mod sample;

pub use error::{AlgebraError, Result};
pub use field::{Field, FieldElem};
pub use monomial::{Monomial, MonomialOrder, OrderKind, MAX_VARS};
pub use poly::Poly;
