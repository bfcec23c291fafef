//! Quadrature oracle for the defining integral of D_N(alpha, X).

use crate::quad::adaptive_gk21;
use crate::real::Real;

use super::{DebyeError, DebyeEvaluation, DebyeParams, Method};

/// Relative width added to both edges of the refused band 1 < alpha < e^X.
pub const DEFAULT_SINGULAR_MARGIN: f64 = 1e-8;

/// Subdivision cap for the adaptive scheme.
const MAX_SUBDIVISIONS: usize = 10_000;

/// D_N(alpha, X) by adaptive Gauss-Kronrod quadrature of
/// N X^-N integral t^N / (e^t - alpha) dt over [0, X].
///
/// The t -> 0 end is handled analytically: the integrand tends to 0 for
/// N >= 1 and to 1/(1 - alpha) for N = 0. The denominator is evaluated as
/// expm1(t) + (1 - alpha) so alpha near 1 costs no cancellation.
pub fn debye_oracle<T: Real>(
    p: &DebyeParams<T>,
    tol: T,
) -> Result<DebyeEvaluation<T>, DebyeError> {
    debye_oracle_with_margin(p, tol, T::of(DEFAULT_SINGULAR_MARGIN))
}

pub fn debye_oracle_with_margin<T: Real>(
    p: &DebyeParams<T>,
    tol: T,
    margin: T,
) -> Result<DebyeEvaluation<T>, DebyeError> {
    if tol < T::of(1e-13) {
        return Err(DebyeError::Domain(format!(
            "oracle tolerance must be >= 1e-13, got {tol}"
        )));
    }
    if p.n == 0 && p.alpha == T::one() {
        return Err(DebyeError::Domain(
            "N = 0 with alpha = 1 diverges: integrand ~ 1/t at the origin".into(),
        ));
    }
    if p.in_singular_band(margin) {
        return Err(DebyeError::SingularBand {
            alpha: p.alpha.as_f64(),
            x: p.x.as_f64(),
        });
    }
    let n = p.n;
    let alpha = p.alpha;
    let one_minus_alpha = T::one() - alpha;
    let integrand = move |t: T| {
        if t == T::zero() {
            if n == 0 {
                return (T::one() - alpha).recip();
            }
            return T::zero();
        }
        let denom = t.exp_m1() + one_minus_alpha;
        t.powi(n as i32) / denom
    };
    let q = adaptive_gk21(
        integrand,
        T::zero(),
        p.x,
        T::min_positive_value() * T::of(1e16),
        tol * T::of(0.25),
        MAX_SUBDIVISIONS,
    )?;
    // The N in the N X^-N prefactor is literal: D_0 evaluates to zero
    // wherever its integral is finite (and errors where it is not).
    let scale = T::of_i64(p.n as i64) / p.x.powi(p.n as i32);
    let value = scale * q.value;
    let rel_achieved = (q.abs_error / q.value.abs().max(T::min_positive_value()))
        .max(T::of(4.0) * T::epsilon());
    Ok(DebyeEvaluation {
        value,
        method: Method::Oracle,
        err_estimate: rel_achieved * value.abs(),
        terms_used: q.evaluations,
    })
}
