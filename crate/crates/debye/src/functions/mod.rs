//! Every representation of the Debye function D_N(alpha, X) =
//! N X^-N integral of t^N / (e^t - alpha) over [0, X]:
//!
//! * [`debye_oracle`]: adaptive quadrature of the defining integral, the
//!   ground truth everything else is validated against;
//! * [`debye_bernoulli_series`]: the classical even-Bernoulli expansion,
//!   valid for alpha = 1 and |X| < 2 pi;
//! * [`debye_new_polylog`]: polylogarithm closed form in powers of
//!   alpha e^-X, convergent as a real series for 0 < alpha <= 1;
//! * [`debye_dubinov_polylog`]: the Dubinov polylogarithm form in powers of
//!   e^X / alpha, real for alpha > e^X, complex-continued elsewhere;
//! * [`debye_series_s1`] / [`debye_series_s2`]: the truncated double-sum
//!   solutions, kept as directly summable cross-check paths;
//! * [`debye_large_x`]: the leading large-X asymptotic value.

mod asymptotic;
mod bernoulli_series;
mod direct_series;
mod oracle;
mod polylog_forms;

pub use asymptotic::debye_large_x;
pub use bernoulli_series::debye_bernoulli_series;
pub use direct_series::{debye_series_s1, debye_series_s2};
pub use oracle::{debye_oracle, debye_oracle_with_margin, DEFAULT_SINGULAR_MARGIN};
pub use polylog_forms::{debye_dubinov_polylog, debye_new_polylog};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quad::QuadError;
use crate::real::Real;
use crate::special::SpecialError;

/// Parameters of D_N(alpha, X): dimension N, denominator shift alpha, and
/// the upper integration limit X (Theta_D / T in the thermodynamic reading).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DebyeParams<T> {
    pub n: u32,
    pub alpha: T,
    pub x: T,
}

impl<T: Real> DebyeParams<T> {
    pub fn new(n: u32, alpha: T, x: T) -> Result<Self, DebyeError> {
        if !(alpha > T::zero()) {
            return Err(DebyeError::Domain(format!(
                "alpha must be positive, got {alpha}"
            )));
        }
        if !(x > T::zero()) {
            return Err(DebyeError::Domain(format!("X must be positive, got {x}")));
        }
        Ok(DebyeParams { n, alpha, x })
    }

    /// The defining integrand has a pole at t = ln(alpha) whenever
    /// 1 < alpha < e^X; `margin` widens the refused band multiplicatively on
    /// both edges.
    pub fn in_singular_band(&self, margin: T) -> bool {
        self.alpha > T::one() && self.alpha.ln() < self.x * (T::one() + margin)
    }
}

/// Which representation produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Oracle,
    BernoulliSeries,
    DubinovPolylog,
    NewPolylog,
    S1Direct,
    S2Direct,
    LargeXAsymptotic,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Oracle => "oracle",
            Method::BernoulliSeries => "bernoulli_series",
            Method::DubinovPolylog => "dubinov_polylog",
            Method::NewPolylog => "new_polylog",
            Method::S1Direct => "s1_direct",
            Method::S2Direct => "s2_direct",
            Method::LargeXAsymptotic => "large_x_asymptotic",
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// One computed value of D_N(alpha, X) with the error bound the producing
/// method can justify.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DebyeEvaluation<T> {
    pub value: T,
    pub method: Method,
    pub err_estimate: T,
    pub terms_used: usize,
}

/// Errors raised by the representation layer.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum DebyeError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("singular band: 1 < alpha < e^X (alpha = {alpha}, X = {x}); the defining integral has an interior pole")]
    SingularBand { alpha: f64, x: f64 },
    #[error("convergence failure: {0}")]
    Convergence(String),
    #[error("continuation residual |Im| = {residual:e} exceeds tolerance {tolerance:e}")]
    ContinuationResidual { residual: f64, tolerance: f64 },
    #[error(transparent)]
    Special(#[from] SpecialError),
    #[error(transparent)]
    Quadrature(#[from] QuadError),
}

/// Deterministic method choice: the new polylogarithm form for alpha <= 1,
/// the Dubinov real path for alpha above the singular band, an error inside
/// the band (where the integral itself is undefined).
pub fn recommend_method<T: Real>(p: &DebyeParams<T>) -> Result<Method, DebyeError> {
    if p.alpha <= T::one() {
        Ok(Method::NewPolylog)
    } else if !p.in_singular_band(DEFAULT_SINGULAR_MARGIN.of()) {
        Ok(Method::DubinovPolylog)
    } else {
        Err(DebyeError::SingularBand {
            alpha: p.alpha.as_f64(),
            x: p.x.as_f64(),
        })
    }
}

/// Helper so a constant f64 margin converts in generic code.
trait MarginExt {
    fn of<T: Real>(self) -> T;
}
impl MarginExt for f64 {
    fn of<T: Real>(self) -> T {
        T::of(self)
    }
}
