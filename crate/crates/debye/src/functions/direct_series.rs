//! Truncated direct-series solutions, kept as independently summable
//! cross-check paths next to the closed forms.
//!
//! The first series sums powers of 1/alpha with an inner confluent
//! hypergeometric row and converges for alpha > e^X. The second converges
//! for 0 < alpha <= 1 and is evaluated through its incomplete-gamma
//! resummation
//!
//!   S2 = (N / X^N) sum_{m>=1} alpha^{m-1} gamma(N+1, m X) / m^{N+1},
//!
//! which is numerically far better behaved than the raw alternating double
//! sum; at alpha = 1 the geometric tail degenerates and the remainder is
//! completed exactly through zeta(N+1) minus the partial harmonic sum, with
//! only an exponentially small bounded leftover.

use crate::real::Real;
use crate::special::{gamma, lower_incomplete_gamma, zeta_int};

use super::{DebyeError, DebyeEvaluation, DebyeParams, Method};

/// Internal relative tolerance the tail bounds are held to.
const SERIES_TOL: f64 = 1e-12;

pub fn debye_series_s1<T: Real>(
    p: &DebyeParams<T>,
    max_terms: usize,
) -> Result<DebyeEvaluation<T>, DebyeError> {
    let ratio = p.x.exp() / p.alpha;
    if ratio >= T::one() {
        return Err(DebyeError::Convergence(format!(
            "outer ratio e^X/alpha = {ratio} >= 1: the double series cannot converge"
        )));
    }
    let tol = T::of(SERIES_TOL);
    let nf = T::of_i64(p.n as i64);
    // n1 = 0 row collapses to the single j = 0 term.
    let mut sum = -nf * p.x / (p.alpha * (nf + T::one()));
    let mut comp = T::zero();
    let mut terms_used = 1usize;
    let mut apow = T::one(); // alpha^{-n1}
    let mut tail = T::max_value();
    let mut converged = false;
    for n1 in 1..=max_terms {
        apow /= p.alpha;
        let zn = p.x * T::of_usize(n1);
        if zn > T::of(650.0) {
            break; // inner row would overflow; the tail check below decides
        }
        // inner = sum_j (X n1)^j / (j! (N+1+j))
        let mut t = (nf + T::one()).recip();
        let mut inner = t;
        let mut j = 0usize;
        loop {
            let jf = T::of_usize(j);
            let t_next = t * zn * (nf + T::one() + jf)
                / ((jf + T::one()) * (nf + T::of(2.0) + jf));
            t = t_next;
            inner += t;
            j += 1;
            terms_used += 1;
            if t < T::epsilon() * inner || j >= max_terms {
                break;
            }
        }
        let outer_term = -(nf * p.x / p.alpha) * apow * inner;
        let s = sum + outer_term;
        comp += if sum.abs() >= outer_term.abs() {
            (sum - s) + outer_term
        } else {
            (outer_term - s) + sum
        };
        sum = s;
        tail = outer_term.abs() * ratio / (T::one() - ratio);
        if tail <= tol * sum.abs() {
            converged = true;
            break;
        }
    }
    let value = sum + comp;
    if !converged && tail > T::of(1e-8) * value.abs() {
        return Err(DebyeError::Convergence(format!(
            "tail bound {:e} still above tolerance after {max_terms} outer terms",
            tail.as_f64()
        )));
    }
    Ok(DebyeEvaluation {
        value,
        method: Method::S1Direct,
        err_estimate: tail + value.abs() * T::epsilon() * T::of(8.0),
        terms_used,
    })
}

pub fn debye_series_s2<T: Real>(
    p: &DebyeParams<T>,
    max_terms: usize,
) -> Result<DebyeEvaluation<T>, DebyeError> {
    if p.alpha > T::one() {
        return Err(DebyeError::Domain(format!(
            "the alpha-ascending series requires 0 < alpha <= 1, got {}",
            p.alpha
        )));
    }
    let tol = T::of(SERIES_TOL);
    let scale = T::of_i64(p.n as i64) / p.x.powi(p.n as i32);
    let big_gamma = gamma(T::of_i64(p.n as i64 + 1))?;

    if p.alpha < T::one() {
        let mut sum = T::zero();
        let mut comp = T::zero();
        let mut apow = T::one(); // alpha^{m-1}
        let mut tail = T::max_value();
        let mut m = 0usize;
        while m < max_terms {
            m += 1;
            if m > 1 {
                apow *= p.alpha;
            }
            let mf = T::of_usize(m);
            let term = apow * lower_incomplete_gamma(p.n + 1, mf * p.x)?
                / mf.powi(p.n as i32 + 1);
            let s = sum + term;
            comp += if sum.abs() >= term.abs() {
                (sum - s) + term
            } else {
                (term - s) + sum
            };
            sum = s;
            tail = big_gamma * apow * p.alpha
                / ((T::one() - p.alpha) * (mf + T::one()).powi(p.n as i32 + 1));
            if tail <= tol * sum.abs() {
                break;
            }
        }
        let value = scale * (sum + comp);
        if tail > tol * sum.abs() {
            return Err(DebyeError::Convergence(format!(
                "geometric tail bound {:e} still above tolerance after {max_terms} terms (alpha = {})",
                tail.as_f64(),
                p.alpha
            )));
        }
        return Ok(DebyeEvaluation {
            value,
            method: Method::S2Direct,
            err_estimate: scale * tail + value.abs() * T::epsilon() * T::of(8.0),
            terms_used: m,
        });
    }

    // alpha = 1: sum the gamma rows until e^{-mX} is negligible, then
    // complete the pure Gamma(N+1)/m^{N+1} remainder exactly through zeta.
    let needed = (T::of(45.0) / p.x).ceil().as_f64() as usize;
    let m_cut = needed.max(8);
    if m_cut > max_terms {
        return Err(DebyeError::Convergence(format!(
            "alpha = 1 tail needs {m_cut} rows before the remainder bound applies; max_terms = {max_terms}"
        )));
    }
    let mut sum = T::zero();
    let mut comp = T::zero();
    let mut harmonic = T::zero();
    for m in 1..=m_cut {
        let mf = T::of_usize(m);
        let mp = mf.powi(p.n as i32 + 1);
        harmonic += mp.recip();
        let term = lower_incomplete_gamma(p.n + 1, mf * p.x)? / mp;
        let s = sum + term;
        comp += if sum.abs() >= term.abs() {
            (sum - s) + term
        } else {
            (term - s) + sum
        };
        sum = s;
    }
    let completion = big_gamma * (zeta_int::<T>(p.n + 1)? - harmonic);
    let value = scale * (sum + comp + completion);
    // Leftover: Gamma(N+1) sum_{m>M} e^{-mX} poly(mX) / m^{N+1}, bounded by
    // its first term over a safe geometric ratio.
    let z1 = T::of_usize(m_cut + 1) * p.x;
    let mut poly = T::one();
    let mut t = T::one();
    for k in 1..=p.n {
        t = t * z1 / T::of_i64(k as i64);
        poly += t;
    }
    let leftover = big_gamma * (-z1).exp() * poly
        / (T::of_usize(m_cut + 1).powi(p.n as i32 + 1)
            * (T::one() - (-p.x / T::of(2.0)).exp()));
    Ok(DebyeEvaluation {
        value,
        method: Method::S2Direct,
        err_estimate: scale * leftover + value.abs() * T::epsilon() * T::of(8.0),
        terms_used: m_cut,
    })
}
