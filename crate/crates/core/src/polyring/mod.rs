//! Exact polynomial arithmetic: monomials, monomial orders, rational
//! coefficient polynomials and polynomial matrices.

mod matrix;
mod monomial;
mod order;
mod poly;
mod ring;

pub use matrix::{PolyMatrix, MAX_DET_SIZE};
pub use monomial::{Monomial, MAX_VARS};
pub use order::MonomialOrder;
pub use poly::{product, rat, Polynomial, Term};
pub use ring::{Ring, RingRef, RingSpec};
