//! Scalar special functions used by every Debye representation: gamma,
//! Bernoulli numbers and polynomials, the Riemann zeta function at integer
//! argument, integer-order polylogarithms (real series plus the analytic
//! continuation past `x = 1`), the lower incomplete gamma function, and the
//! Kummer-function identity that ties it to `1F1`.
//!
//! All operations are pure functions; the single internal cache (the exact
//! Bernoulli table) is initialized once and then only read.

mod bernoulli;
mod gamma;
mod incomplete_gamma;
mod polylog;
mod zeta;

pub use bernoulli::{
    bernoulli_number, bernoulli_over_factorial, bernoulli_polynomial, BERNOULLI_BOUND,
};
pub use gamma::{gamma, ln_factorial, ln_gamma_signed};
pub use incomplete_gamma::{kummer_ratio, lower_incomplete_gamma};
pub use polylog::{polylog, polylog_continued};
pub use zeta::zeta_int;

pub(crate) use bernoulli::bernoulli_f64_ratio;
pub(crate) use polylog::{polylog_continued_dd, polylog_dd_relaxed};
pub(crate) use zeta::zeta_dd;

use thiserror::Error;

/// Errors raised by the special-function layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpecialError {
    #[error("gamma pole at non-positive integer argument {0}")]
    Pole(f64),
    #[error("result overflows the floating-point range (argument {0})")]
    Overflow(f64),
    #[error("index {index} outside configured bound {bound}")]
    Bounds { index: usize, bound: usize },
    #[error("argument outside domain: {0}")]
    Domain(String),
    #[error("series did not converge within {terms} terms")]
    Convergence { terms: usize },
}
