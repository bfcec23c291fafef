//! Even-Bernoulli series for D_N(X) at alpha = 1:
//!
//! D_N(X) = N (1/N - X/(2(N+1)) + sum_{k>=1} B_2k X^2k / ((2k+N) (2k)!)),
//!
//! convergent for |X| < 2 pi. Terms come from the exact rational table while
//! 2k stays within it; past the table B_2k/(2k)! continues through the zeta
//! identity (see `bernoulli_f64_ratio`), which keeps the series usable right
//! up to the radius where hundreds of terms are needed.

use crate::real::Real;
use crate::special::bernoulli_f64_ratio;

use super::{DebyeError, DebyeEvaluation, Method};

const MAX_TERMS: usize = 4000;

pub fn debye_bernoulli_series<T: Real>(
    n: u32,
    x: T,
    tol: T,
) -> Result<DebyeEvaluation<T>, DebyeError> {
    if n < 1 {
        return Err(DebyeError::Domain(
            "bernoulli series requires N >= 1".into(),
        ));
    }
    let two_pi = T::of(2.0) * T::PI();
    if !(x > T::zero()) {
        return Err(DebyeError::Domain(format!("X must be positive, got {x}")));
    }
    if x >= two_pi {
        return Err(DebyeError::Domain(format!(
            "|X| must lie below 2 pi for the Bernoulli series, got {x}"
        )));
    }
    let nf = T::of_i64(n as i64);
    let ratio_sq = (x / two_pi) * (x / two_pi);
    let mut sum = nf.recip() - x / (T::of(2.0) * (nf + T::one()));
    let mut comp = T::zero();
    let mut x_pow = T::one(); // X^2k, finite while 2k stays in the exact table
    let mut r_pow = T::one(); // (X/2pi)^2k, the overflow-free continuation
    let mut terms_used = 1usize;
    let mut err = T::max_value();
    for k in 1..=MAX_TERMS {
        r_pow *= ratio_sq;
        let term = if 2 * k <= crate::special::BERNOULLI_BOUND {
            x_pow = x_pow * x * x;
            bernoulli_f64_ratio::<T>(2 * k) * x_pow / (T::of_usize(2 * k) + nf)
        } else {
            // B_2k/(2k)! = (-1)^{k+1} 2 zeta(2k) (2pi)^-2k with zeta(2k) = 1
            // to machine precision out here; X^2k folds into the ratio power.
            let sign = if k % 2 == 1 { T::one() } else { -T::one() };
            sign * T::of(2.0) * r_pow / (T::of_usize(2 * k) + nf)
        };
        let s = sum + term;
        comp += if sum.abs() >= term.abs() {
            (sum - s) + term
        } else {
            (term - s) + sum
        };
        sum = s;
        terms_used = k + 1;
        // |B_2k X^2k / (2k)!| ~ 2 (X/2pi)^2k, so the tail after this term is
        // geometrically dominated by ratio_sq.
        err = term.abs() * ratio_sq / (T::one() - ratio_sq);
        if err <= tol * sum.abs() * T::of(0.5) {
            break;
        }
        if k == MAX_TERMS {
            return Err(DebyeError::Convergence(format!(
                "Bernoulli series still above tolerance after {MAX_TERMS} terms (X = {x} near the 2 pi radius)"
            )));
        }
    }
    let value = nf * (sum + comp);
    Ok(DebyeEvaluation {
        value,
        method: Method::BernoulliSeries,
        err_estimate: nf * err + value.abs() * T::epsilon() * T::of(4.0),
        terms_used,
    })
}
