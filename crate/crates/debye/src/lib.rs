//! Debye functions D_N(alpha, X) = N X^-N integral of t^N/(e^t - alpha) over
//! [0, X], evaluated through all of its classical representations: an adaptive
//! quadrature oracle, the even-Bernoulli expansion, two polylogarithm closed
//! forms, directly summed double series, and the large-X asymptotic row,
//! plus Debye-model thermodynamics (internal energy and heat capacity at any
//! temperature) and a miniature method-of-brackets engine that regenerates
//! the four series solutions of the defining integral mechanically.
//!
//! The numerical kernels are generic over the scalar (see [`real::Real`]);
//! concrete `f64` aliases live at the crate root. Bernoulli numbers and the
//! brackets engine run on exact rationals, and the cancellation-prone
//! closed-form assemblies run internally in double-word arithmetic.

// Argument guards are written as `!(x > 0)` on purpose: the negated form
// also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod brackets;
pub mod dd;
mod functions;
pub mod quad;
pub mod real;
pub mod selftest;
pub mod special;
pub mod thermo;

pub use functions::{
    debye_bernoulli_series, debye_dubinov_polylog, debye_large_x, debye_new_polylog,
    debye_oracle, debye_oracle_with_margin, debye_series_s1, debye_series_s2,
    recommend_method, DebyeError, DebyeEvaluation, DebyeParams, Method,
    DEFAULT_SINGULAR_MARGIN,
};

/// Concrete `f64` aliases for the common entry points.
pub type DebyeParams64 = DebyeParams<f64>;
pub type DebyeEvaluation64 = DebyeEvaluation<f64>;
pub type SolidModel64 = thermo::SolidModel<f64>;
pub type Complex64 = num_complex::Complex<f64>;
