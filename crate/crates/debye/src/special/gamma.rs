//! Gamma function for real argument, via the Lanczos approximation with
//! g = 607/128 and 15 coefficients. Relative accuracy is about 1e-14 over
//! the positive axis, comfortably inside the 1e-13 contract for
//! 0 < x <= 171.

use crate::dd::Dd;
use crate::real::Real;

use super::SpecialError;

const LANCZOS_G: f64 = 4.742_187_5; // 607/128

const LANCZOS_COEFF: [f64; 15] = [
    0.999_999_999_999_997_1,
    57.156_235_665_862_92,
    -59.597_960_355_475_49,
    14.136_097_974_741_746,
    -0.491_913_816_097_620_2,
    3.399_464_998_481_189e-5,
    4.652_362_892_704_858e-5,
    -9.837_447_530_487_956e-5,
    1.580_887_032_249_125e-4,
    -2.102_644_417_241_049e-4,
    2.174_396_181_152_126e-4,
    -1.643_181_065_367_639e-4,
    8.441_822_398_385_275e-5,
    -2.619_083_840_158_141e-5,
    3.689_918_265_953_162e-6,
];

fn lanczos_series<T: Real>(x: T) -> T {
    let mut ser = T::of(LANCZOS_COEFF[0]);
    for (j, &c) in LANCZOS_COEFF.iter().enumerate().skip(1) {
        ser += T::of(c) / (x + T::of_usize(j));
    }
    ser
}

/// ln |Gamma(x)| together with the sign of Gamma(x).
///
/// Works on the whole real line except the poles at non-positive integers.
pub fn ln_gamma_signed<T: Real>(x: T) -> Result<(T, i8), SpecialError> {
    if x.is_nan() {
        return Err(SpecialError::Domain("NaN argument to gamma".into()));
    }
    if x <= T::zero() && x.fract() == T::zero() {
        return Err(SpecialError::Pole(x.as_f64()));
    }
    if x >= T::of(0.5) {
        Ok((ln_gamma_positive(x), 1))
    } else {
        // Reflection: Gamma(x) Gamma(1-x) = pi / sin(pi x).
        let s = (T::PI() * x).sin();
        let val = T::PI().ln() - s.abs().ln() - ln_gamma_positive(T::one() - x);
        Ok((val, if s < T::zero() { -1 } else { 1 }))
    }
}

/// ln Gamma for x >= 0.5 carried as a double word: the dominant
/// (x + 1/2) ln(x + g + 1/2) term loses ~x ln x ulps when formed in the base
/// scalar, which is exactly what pushes large arguments past the accuracy
/// contract.
fn ln_gamma_positive_dd<T: Real>(x: T) -> Dd<T> {
    let tmp = Dd::from_t(x).add_t(T::of(LANCZOS_G + 0.5));
    let ser = lanczos_series(x);
    let lead = tmp.ln().mul(Dd::from_t(x).add_t(T::of(0.5)));
    lead.sub(tmp)
        .add_t((T::of(2.506_628_274_631_000_7) * ser / x).ln())
}

fn ln_gamma_positive<T: Real>(x: T) -> T {
    ln_gamma_positive_dd(x).to_t()
}

/// Gamma(x) for real x.
pub fn gamma<T: Real>(x: T) -> Result<T, SpecialError> {
    if x.fract() == T::zero() && x >= T::one() && x <= T::of(180.0) {
        // Integer arguments: exact factorial through a double-word ladder,
        // immune to the mild drift of the Lanczos sum at large arguments.
        let n = x.as_f64() as i64;
        let mut acc = crate::dd::Dd::<T>::one();
        for j in 2..n {
            acc = acc.mul_t(T::of_i64(j));
        }
        let v = acc.to_t();
        if v.is_infinite() {
            return Err(SpecialError::Overflow(x.as_f64()));
        }
        return Ok(v);
    }
    if x >= T::of(0.5) {
        let v = ln_gamma_positive_dd(x);
        if v.hi > T::max_value().ln() {
            return Err(SpecialError::Overflow(x.as_f64()));
        }
        // e^(hi+lo) = e^hi (1 + lo) to double-word accuracy.
        let e = v.hi.exp();
        return Ok(e + e * v.lo);
    }
    let (ln_abs, sign) = ln_gamma_signed(x)?;
    if ln_abs > T::max_value().ln() {
        return Err(SpecialError::Overflow(x.as_f64()));
    }
    Ok(T::of_i64(sign as i64) * ln_abs.exp())
}

/// ln(n!) through the same Lanczos path; exact small factorials short-circuit.
pub fn ln_factorial<T: Real>(n: u64) -> T {
    if n < 2 {
        return T::zero();
    }
    if n <= 20 {
        let mut f = 1u64;
        for k in 2..=n {
            f *= k;
        }
        return T::of(f as f64).ln();
    }
    ln_gamma_positive(T::of(n as f64 + 1.0))
}
