//! Exact arithmetic in F_p[X_1^±1, ..., X_d^±1] and the cellular automaton
//! normal form `X_d - Φ`.

mod ca;
mod collinear;
mod exponent;
mod factor;
mod ideal;
mod parse;
mod poly;
mod shape;

pub use ca::{ca_normalize, constant_points, CaShift, CaTransform};
pub use collinear::collinear_support;
pub use exponent::Exponent;
pub use factor::{univariate_factor, Factorization};
pub use ideal::{divide_exact, ideal_member, reduce_class, substitute_time, TimeReduction};
pub use parse::{parse_poly, parse_poly_infer};
pub use poly::{LaurentPoly, MAX_DIM};
pub use shape::{parse_points, Shape};
