//! Exact computations with ideals of points and lines in projective space:
//! Groebner bases, symbolic powers, Hilbert series, and containment checks.

pub mod bezout;
pub mod catalog;
pub mod error;
pub mod groebner;
pub mod hilbert;
pub mod idealops;
pub mod linalg;
pub mod polyexpr;
pub mod polyring;
pub mod report;
pub mod symbolic;
pub mod verify;

pub use error::{Error, Result};
