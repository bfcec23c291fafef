//! Riemann zeta at integer argument s >= 2.
//!
//! Even s goes through the exact Bernoulli formula
//! zeta(2k) = (-1)^{k+1} B_{2k} (2 pi)^{2k} / (2 (2k)!); odd s through an
//! Euler-Maclaurin accelerated direct sum. Both run in double-word
//! arithmetic internally so the closed-form Debye assemblies can consume
//! full-precision values.

use num_traits::Signed;

use crate::dd::Dd;
use crate::real::Real;

use super::bernoulli::{bernoulli_over_factorial, big_ratio_to_dd};
use super::SpecialError;

/// zeta(s) for integer s >= 2 to relative accuracy well below 1e-13.
pub fn zeta_int<T: Real>(s: u32) -> Result<T, SpecialError> {
    Ok(zeta_dd::<T>(s)?.to_t())
}

pub(crate) fn zeta_dd<T: Real>(s: u32) -> Result<Dd<T>, SpecialError> {
    if s < 2 {
        return Err(SpecialError::Domain(format!(
            "zeta_int requires s >= 2, got {s}"
        )));
    }
    if s >= 100 {
        // 2^-100 ~ 8e-31 is already at the double-word noise floor.
        let two = Dd::from_t(T::of(2.0)).powi(-(s as i32));
        let three = Dd::from_t(T::of(3.0)).powi(-(s as i32));
        return Ok(Dd::one().add(two).add(three));
    }
    if s.is_multiple_of(2) {
        let k = (s / 2) as usize;
        let ratio = bernoulli_over_factorial(s as usize)?;
        let q = big_ratio_to_dd::<T>(&ratio.abs());
        let sign = if k % 2 == 1 { T::one() } else { -T::one() };
        // zeta(2k) = |B_{2k}|/(2k)! * (2 pi)^{2k} / 2 with sign fixed positive.
        Ok(q.mul(Dd::two_pi().powi(s as i32)).mul_t(sign * sign).div_t(T::of(2.0)))
    } else {
        Ok(zeta_euler_maclaurin::<T>(s))
    }
}

/// Euler-Maclaurin: zeta(s) = sum_{j<M} j^-s + M^-s/2 + M^{1-s}/(s-1)
/// + sum_i B_{2i}/(2i)! (s)_{2i-1} M^{-s-2i+1}.
fn zeta_euler_maclaurin<T: Real>(s: u32) -> Dd<T> {
    let m: i64 = 24;
    let si = s as i32;
    let mut sum = Dd::<T>::zero();
    for j in 1..m {
        sum = sum.add(Dd::from_t(T::of_i64(j)).powi(-si));
    }
    let m_dd = Dd::from_t(T::of_i64(m));
    sum = sum.add(m_dd.powi(-si).div_t(T::of(2.0)));
    sum = sum.add(m_dd.powi(1 - si).div_t(T::of_i64(s as i64 - 1)));

    // Correction terms with exact B_{2i}/(2i)! and the rising factorial
    // (s)(s+1)...(s+2i-2).
    let mut rising = Dd::from_t(T::of_i64(s as i64)); // (s)_1
    let eps2 = T::epsilon() * T::epsilon();
    for i in 1..=24usize {
        let b_ratio = big_ratio_to_dd::<T>(
            &bernoulli_over_factorial(2 * i).expect("within table"),
        );
        let term = b_ratio.mul(rising).mul(m_dd.powi(-si - 2 * i as i32 + 1));
        sum = sum.add(term);
        if term.hi.abs() < eps2 * sum.hi.abs() {
            break;
        }
        // extend (s)_{2i-1} -> (s)_{2i+1}
        rising = rising
            .mul_t(T::of_i64(s as i64 + 2 * i as i64 - 1))
            .mul_t(T::of_i64(s as i64 + 2 * i as i64));
    }
    sum
}
