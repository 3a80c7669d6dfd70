//! Exact scalar arithmetic: arbitrary-precision rationals, Laurent polynomials
//! in the indeterminate `q`, q-numbers and q-factorials.
//!
//! [`Scalar`] abstracts over the three coefficient rings the rest of the crate
//! works in: formal Laurent polynomials (exact mode), rationals (exact mode at a
//! specialized rational `q`), and `f64` (numeric mode).

mod laurent;
mod rational;
mod scalar;

pub use laurent::{q_factorial, q_number, LaurentPoly};
pub use rational::{parse_rational, Rational};
pub use scalar::Scalar;
pub(crate) use rational::{rational_powi, rational_to_f64};
