//! Exact computations on linear cellular automaton shifts `(X_d - Φ)^⊥`
//! over a prime field: window languages, Haar measures of cylinder events,
//! mixing diagnostics along dilations, and exhaustive searches for sliding
//! block codes between shifts.

pub mod error;
pub mod field;
pub mod homs;
pub mod laurent;
pub mod linalg;
pub mod mixing;
pub mod shift;

pub use error::{Error, Result};
pub use field::Prime;
pub use laurent::{CaShift, Exponent, LaurentPoly, Shape};
