//! Exact arithmetic in `Z[q, t, 1/q, 1/t]` and its fraction field.

mod dense;
mod laurent;
mod ratfunc;

pub use laurent::{binomial, q_int, qt_int, Exponent, LaurentPoly, Specialization};
pub use ratfunc::{rf_to_laurent, RatFunc};
