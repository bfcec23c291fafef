//! Miniature method-of-brackets engine.
//!
//! A bracket series is a formal multi-index sum: each summation index
//! carries the weight phi_n = (-1)^n / n!, the coefficient is a product of
//! gamma, power and sign factors with affine arguments, and each bracket
//! <a1 n1 + ... + c> acts as the linear constraint a1 n1 + ... + c = 0.
//! Solving every square subsystem (one per index subset of bracket size)
//! yields the candidate series representations of the original integral;
//! free indices remain summation variables, bound indices contribute
//! Gamma(-n*) at their affine solutions, scaled by 1/|det A|.
//!
//! The engine covers exactly what the Debye chain needs: affine-rational
//! index algebra with the dimension N carried symbolically, exact
//! fraction-free solving, corner-divergence classification, exact term
//! descriptors, and compensated numerical evaluation. A general
//! integrand-to-bracket-series compiler is out of scope.

mod debye_series;
mod json;
mod solve;
mod terms;
mod types;

pub use debye_series::{
    classify_debye_candidates, debye_bracket_series, LabeledCandidate, SeriesLabel,
};
pub use json::{
    bracket_series_from_dto, bracket_series_to_dto, bracket_series_to_json, candidate_to_dto,
    candidate_to_json, BracketSeriesDto, CandidateDto,
};
pub use solve::enumerate_candidates;
pub use terms::{evaluate_candidate, term_descriptor, CandidateEvaluation, TermDescriptor};
pub use types::{
    AffineConstant, AffineIndexForm, BracketSeries, CoefficientFactor, IndexId, PowerBase,
    Prefactor, SeriesCandidate, Validity,
};

use thiserror::Error;

/// Errors raised by the brackets engine.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BracketsError {
    #[error("structure error: {0}")]
    Structure(String),
    #[error("gamma pole: {0}")]
    GammaPole(String),
    #[error("convergence failure: {0}")]
    Convergence(String),
    #[error("candidate is not evaluable: {0}")]
    InvalidCandidate(String),
}
