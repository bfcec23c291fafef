//! Lower incomplete gamma at integer order and the Kummer-function identity
//! 1F1(n; n+1; -Z) = n Z^-n gamma(n, Z).
//!
//! For integer n the incomplete gamma has the exact finite form
//! gamma(n, Z) = Gamma(n) [1 - e^-Z sum_{k<n} Z^k/k!]. Three regimes keep it
//! stable: the complementary tail sum e^-Z sum_{k>=n} Z^k/k! for small Z
//! (where the bracketed subtraction would cancel), the direct finite sum in
//! the middle, and a log-space variant past Z = 50 so Z^k never overflows.

use crate::real::Real;

use super::gamma::{gamma, ln_factorial};
use super::SpecialError;

/// gamma(n, Z) = integral of t^{n-1} e^-t over [0, Z], integer n >= 1, Z >= 0.
pub fn lower_incomplete_gamma<T: Real>(n: u32, z: T) -> Result<T, SpecialError> {
    if n == 0 {
        return Err(SpecialError::Domain(
            "lower_incomplete_gamma requires n >= 1".into(),
        ));
    }
    if z < T::zero() || z.is_nan() {
        return Err(SpecialError::Domain(format!(
            "lower_incomplete_gamma requires Z >= 0, got {z}"
        )));
    }
    if z == T::zero() {
        return Ok(T::zero());
    }
    let g = gamma(T::of_i64(n as i64))?;
    let nf = T::of_i64(n as i64);
    if z < nf + T::of(10.0) {
        // Complementary tail: gamma(n,Z) = Gamma(n) e^-Z sum_{k>=n} Z^k/k!,
        // all terms positive.
        let mut term = T::one();
        for k in 1..=n {
            term = term * z / T::of_i64(k as i64);
        }
        let mut sum = term; // k = n term
        let mut k = n;
        loop {
            k += 1;
            term = term * z / T::of_i64(k as i64);
            sum += term;
            if term < T::epsilon() * sum {
                break;
            }
        }
        Ok(g * (-z).exp() * sum)
    } else if z <= T::of(50.0) {
        // Finite sum, no cancellation since e^-Z * poly < 1/2 here.
        let mut term = T::one();
        let mut poly = T::one();
        for k in 1..n {
            term = term * z / T::of_i64(k as i64);
            poly += term;
        }
        Ok(g * (T::one() - (-z).exp() * poly))
    } else {
        // Log space: corr = exp(ln poly - Z) with poly summed by log-sum-exp.
        let ln_z = z.ln();
        let mut max_ln = T::neg_infinity();
        let mut lns: Vec<T> = Vec::with_capacity(n as usize);
        for k in 0..n {
            let l = T::of_i64(k as i64) * ln_z - ln_factorial::<T>(k as u64);
            if l > max_ln {
                max_ln = l;
            }
            lns.push(l);
        }
        let mut acc = T::zero();
        for l in lns {
            acc += (l - max_ln).exp();
        }
        let corr = (max_ln + acc.ln() - z).exp();
        Ok(g * (T::one() - corr))
    }
}

/// 1F1(n; n+1; -Z) through the incomplete-gamma identity. The series limit
/// gives 1 at Z = 0; negative Z rides the same finite-sum identity, which
/// holds as an analytic identity for all real Z.
pub fn kummer_ratio<T: Real>(n: u32, z: T) -> Result<T, SpecialError> {
    if n == 0 {
        return Err(SpecialError::Domain("kummer_ratio requires n >= 1".into()));
    }
    if z == T::zero() {
        return Ok(T::one());
    }
    let nf = T::of_i64(n as i64);
    if z > T::zero() {
        return Ok(nf * lower_incomplete_gamma(n, z)? / z.powi(n as i32));
    }
    // Z < 0 means a positive hypergeometric argument, where the defining
    // series sum_k n/(n+k) (-Z)^k/k! has all-positive terms; summing it
    // directly beats the cancellation-prone bracketed identity there.
    let w = -z;
    let mut term = T::one();
    let mut sum = T::zero();
    let mut comp = T::zero();
    let mut k = 0u32;
    loop {
        let contrib = term * nf / (nf + T::of_i64(k as i64));
        let s = sum + contrib;
        comp += if sum.abs() >= contrib.abs() {
            (sum - s) + contrib
        } else {
            (contrib - s) + sum
        };
        sum = s;
        k += 1;
        term = term * w / T::of_i64(k as i64);
        if term < T::epsilon() * sum && T::of_i64(k as i64) > w {
            break;
        }
        if k > 100_000 {
            return Err(SpecialError::Convergence { terms: k as usize });
        }
    }
    Ok(sum + comp)
}
