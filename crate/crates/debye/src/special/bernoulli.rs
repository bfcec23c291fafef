//! Exact Bernoulli numbers and Bernoulli polynomials.
//!
//! The numbers are kept as exact rationals because B_k grows fast enough to
//! lose all floating-point accuracy past k ~ 30; conversion to the working
//! scalar happens only at the evaluation boundary. The convention is
//! B_1 = -1/2, which the polylogarithm inversion formula depends on.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::dd::Dd;
use crate::real::Real;

use super::SpecialError;

/// Largest index the exact table serves.
pub const BERNOULLI_BOUND: usize = 200;

fn table() -> &'static Vec<BigRational> {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Recurrence: sum_{j=0}^{m} C(m+1, j) B_j = 0 for m >= 1, B_0 = 1.
        let mut b: Vec<BigRational> = Vec::with_capacity(BERNOULLI_BOUND + 1);
        b.push(BigRational::one());
        for m in 1..=BERNOULLI_BOUND {
            if m > 1 && m % 2 == 1 {
                b.push(BigRational::zero());
                continue;
            }
            let mut acc = BigRational::zero();
            let mut binom = BigInt::one(); // C(m+1, 0)
            for (j, bj) in b.iter().enumerate().take(m) {
                if !bj.is_zero() {
                    acc += bj * BigRational::from_integer(binom.clone());
                }
                // C(m+1, j+1) = C(m+1, j) * (m+1-j) / (j+1)
                binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
            }
            b.push(-acc / BigRational::from_integer(BigInt::from(m + 1)));
        }
        b
    })
}

/// Exact Bernoulli number B_k (convention B_1 = -1/2).
pub fn bernoulli_number(k: usize) -> Result<BigRational, SpecialError> {
    if k > BERNOULLI_BOUND {
        return Err(SpecialError::Bounds { index: k, bound: BERNOULLI_BOUND });
    }
    Ok(table()[k].clone())
}

/// Exact ratio B_k / k!, the quantity the series evaluators actually consume.
pub fn bernoulli_over_factorial(k: usize) -> Result<BigRational, SpecialError> {
    let b = bernoulli_number(k)?;
    let mut fact = BigInt::one();
    for j in 2..=k {
        fact *= BigInt::from(j);
    }
    Ok(b / BigRational::from_integer(fact))
}

/// B_k / k! in the working scalar. For k beyond the exact table the zeta
/// identity B_{2m}/(2m)! = (-1)^{m+1} 2 zeta(2m) / (2 pi)^{2m} takes over,
/// where zeta(2m) is 1 to machine precision for the indices involved.
pub(crate) fn bernoulli_f64_ratio<T: Real>(k: usize) -> T {
    if k <= BERNOULLI_BOUND {
        big_ratio_to_real(&bernoulli_over_factorial(k).expect("within bound"))
    } else if k % 2 == 1 {
        T::zero()
    } else {
        let m = k / 2;
        let sign = if m % 2 == 1 { T::one() } else { -T::one() };
        let two_pi = T::of(2.0) * T::PI();
        // (2 pi)^{-k} in ratio form to dodge overflow for large k.
        sign * T::of(2.0) * two_pi.powi(-(k as i32))
    }
}

/// Bernoulli polynomial B_n(z) = sum_j C(n, j) B_j z^{n-j} at a complex point.
pub fn bernoulli_polynomial<T: Real>(
    n: usize,
    z: Complex<T>,
) -> Result<Complex<T>, SpecialError> {
    if n > BERNOULLI_BOUND {
        return Err(SpecialError::Bounds { index: n, bound: BERNOULLI_BOUND });
    }
    // Exact coefficients of z^m, then Horner.
    let bs = table();
    let mut coeffs: Vec<BigRational> = Vec::with_capacity(n + 1);
    let mut binom = BigInt::one(); // C(n, 0)
    for (j, b_j) in bs.iter().enumerate().take(n + 1) {
        coeffs.push(b_j * BigRational::from_integer(binom.clone()));
        if j < n {
            binom = binom * BigInt::from(n - j) / BigInt::from(j + 1);
        }
    }
    // coeffs[j] multiplies z^{n-j}; Horner from j = 0 upward.
    let mut acc = Complex::new(T::zero(), T::zero());
    for c in &coeffs {
        acc = acc * z + Complex::new(big_ratio_to_real::<T>(c), T::zero());
    }
    Ok(acc)
}

/// B_n at a complex double-word point; same Horner walk as above with the
/// exact coefficients carried at double-word precision.
pub(crate) fn bernoulli_polynomial_cdd<T: Real>(
    n: usize,
    z: crate::dd::CDd<T>,
) -> Result<crate::dd::CDd<T>, SpecialError> {
    if n > BERNOULLI_BOUND {
        return Err(SpecialError::Bounds { index: n, bound: BERNOULLI_BOUND });
    }
    let bs = table();
    let mut acc = crate::dd::CDd::<T>::zero();
    let mut binom = BigInt::one();
    let mut coeffs: Vec<BigRational> = Vec::with_capacity(n + 1);
    for (j, b_j) in bs.iter().enumerate().take(n + 1) {
        coeffs.push(b_j * BigRational::from_integer(binom.clone()));
        if j < n {
            binom = binom * BigInt::from(n - j) / BigInt::from(j + 1);
        }
    }
    for c in &coeffs {
        acc = acc.mul(z).add(crate::dd::CDd::real(big_ratio_to_dd::<T>(c)));
    }
    Ok(acc)
}

fn bigint_to_scaled(v: &BigInt) -> (f64, i64) {
    // Returns (mantissa, exp2) with v ~ mantissa * 2^exp2 and |mantissa| < 2^63.
    let bits = v.bits();
    if bits <= 62 {
        let m: i64 = v.try_into().expect("fits i64");
        return (m as f64, 0);
    }
    let shift = bits - 62;
    let m: i64 = (v >> shift).try_into().expect("fits i64 after shift");
    (m as f64, shift as i64)
}

/// Exact-rational to f64 conversion that stays finite for huge numerators
/// and denominators by tracking the binary exponent separately.
fn big_ratio_to_f64(r: &BigRational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let (mn, en) = bigint_to_scaled(r.numer());
    let (md, ed) = bigint_to_scaled(r.denom());
    let e = en - ed;
    if e > 2000 {
        return if r.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
    }
    if e < -2000 {
        return 0.0;
    }
    (mn / md) * 2f64.powi(e as i32)
}

pub(crate) fn big_ratio_to_real<T: Real>(r: &BigRational) -> T {
    T::of(big_ratio_to_f64(r))
}

/// Exact-rational to double-word conversion: head, then the exact remainder.
pub(crate) fn big_ratio_to_dd<T: Real>(r: &BigRational) -> Dd<T> {
    let hi = big_ratio_to_f64(r);
    if !hi.is_finite() {
        return Dd::from_t(T::of(hi));
    }
    let rem = r - BigRational::from_float(hi).expect("finite");
    Dd::new(T::of(hi), T::of(big_ratio_to_f64(&rem)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn low_order_values() {
        assert_eq!(bernoulli_number(0).unwrap(), rat(1, 1));
        assert_eq!(bernoulli_number(1).unwrap(), rat(-1, 2));
        assert_eq!(bernoulli_number(2).unwrap(), rat(1, 6));
        assert_eq!(bernoulli_number(3).unwrap(), rat(0, 1));
        assert_eq!(bernoulli_number(4).unwrap(), rat(-1, 30));
        assert_eq!(bernoulli_number(6).unwrap(), rat(1, 42));
        assert_eq!(bernoulli_number(12).unwrap(), rat(-691, 2730));
    }

    #[test]
    fn odd_indices_vanish() {
        for k in (3..=199).step_by(2) {
            assert!(bernoulli_number(k).unwrap().is_zero(), "B_{k} should be 0");
        }
    }

    #[test]
    fn bound_is_enforced() {
        assert!(bernoulli_number(BERNOULLI_BOUND).is_ok());
        assert!(matches!(
            bernoulli_number(BERNOULLI_BOUND + 1),
            Err(SpecialError::Bounds { .. })
        ));
    }

    #[test]
    fn recurrence_spot_check() {
        // sum_{j=0}^{m} C(m+1, j) B_j = 0, checked independently for m = 9.
        let m = 9usize;
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one();
        for j in 0..m {
            acc += bernoulli_number(j).unwrap() * BigRational::from_integer(binom.clone());
            binom = binom * BigInt::from(m + 1 - j) / BigInt::from(j + 1);
        }
        acc += bernoulli_number(m).unwrap() * BigRational::from_integer(binom);
        assert!(acc.is_zero());
    }

    #[test]
    fn polynomial_values() {
        let at = |n: usize, x: f64| {
            bernoulli_polynomial::<f64>(n, Complex::new(x, 0.0)).unwrap().re
        };
        assert!((at(1, 0.0) + 0.5).abs() < 1e-15);
        assert!((at(2, 0.0) - 1.0 / 6.0).abs() < 1e-15);
        assert!((at(2, 0.5) + 1.0 / 12.0).abs() < 1e-15);
        // B_3(x) = x^3 - 1.5 x^2 + 0.5 x
        let x = 0.3f64;
        assert!((at(3, x) - (x.powi(3) - 1.5 * x * x + 0.5 * x)).abs() < 1e-15);
    }

    #[test]
    fn ratio_conversion_handles_huge_values() {
        // B_200 is around 3.6e215; the ratio against 200! is around 5e-160.
        let b200 = bernoulli_number(200).unwrap();
        let v = big_ratio_to_f64(&b200);
        assert!(v.is_finite() && v.abs() > 1e215 && v.abs() < 1e216);
        let ratio = bernoulli_over_factorial(200).unwrap();
        let r = big_ratio_to_f64(&ratio);
        assert!(r.is_finite() && r.abs() < 1e-150 && r.abs() > 0.0);
        // Cross-check against the zeta identity with zeta(200) = 1; the
        // reference powi itself drifts by ~100 ulps, hence the tolerance.
        let two_pi = 2.0 * std::f64::consts::PI;
        let expect = -2.0 * two_pi.powi(-200);
        assert!((r - expect).abs() <= 1e-13 * expect.abs());
    }

    #[test]
    fn dd_conversion_matches_exact_remainder() {
        let r = rat(1, 3);
        let d = big_ratio_to_dd::<f64>(&r);
        let back = d.hi.to_f64().unwrap() as f64;
        assert_eq!(back, 1.0 / 3.0);
        assert!(d.lo.abs() > 0.0 && d.lo.abs() < f64::EPSILON);
        // hi + lo should be closer to 1/3 than hi alone.
        let residual =
            (BigRational::from_float(d.hi).unwrap() + BigRational::from_float(d.lo).unwrap()
                - r)
                .abs();
        assert!(residual < rat(1, 1_000_000_000).abs() * rat(1, 1 << 30));
    }

    #[test]
    fn hybrid_ratio_continues_past_table() {
        let inside: f64 = bernoulli_f64_ratio(200);
        let expect_inside = -2.0 * (2.0 * std::f64::consts::PI).powi(-200);
        assert!((inside - expect_inside).abs() <= 1e-14 * expect_inside.abs());
        let beyond: f64 = bernoulli_f64_ratio(202);
        let expect = 2.0 * (2.0 * std::f64::consts::PI).powi(-202);
        assert!((beyond - expect).abs() <= 1e-14 * expect.abs());
        assert_eq!(bernoulli_f64_ratio::<f64>(203), 0.0);
    }
}
