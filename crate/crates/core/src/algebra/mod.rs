//! Exact arithmetic: rationals, number fields, Laurent polynomials, matrices
//! and forward-mode differentiation.

pub mod dual;
pub mod field;
pub mod laurent;
pub mod matrix;
pub mod rational;
pub(crate) mod upoly;

pub use dual::{dual_eval, Circuit, Dual, Scalar};
pub use field::{nf_arith, ArithOp, NfElem, NumberField};
pub use laurent::{laurent_arith, LaurentOp, LaurentPoly};
pub use matrix::{det_laurent, det_nf, Matrix};
pub use rational::{rat, ratio, Rational};
