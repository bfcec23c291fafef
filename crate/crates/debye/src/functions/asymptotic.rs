//! Large-X asymptotic value N Gamma(N+1) zeta(N+1) / X^N, the natural
//! truncation of the descending-X series at its first row.

use crate::real::Real;
use crate::special::{gamma, zeta_int};

use super::{DebyeError, DebyeEvaluation, Method};

pub fn debye_large_x<T: Real>(n: u32, x: T) -> Result<DebyeEvaluation<T>, DebyeError> {
    if n < 1 {
        return Err(DebyeError::Domain("large-X value requires N >= 1".into()));
    }
    if !(x > T::zero()) {
        return Err(DebyeError::Domain(format!("X must be positive, got {x}")));
    }
    let nf = T::of_i64(n as i64);
    let value = nf * gamma(nf + T::one())? * zeta_int::<T>(n + 1)? / x.powi(n as i32);
    // Heuristic scale of the neglected exponentially small corrections.
    let err_estimate =
        (nf + T::one()) * gamma(nf + T::of(2.0))? * (-x).exp() / x.powi(n as i32 + 1);
    Ok(DebyeEvaluation {
        value,
        method: Method::LargeXAsymptotic,
        err_estimate,
        terms_used: 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functions::{debye_oracle, DebyeParams};

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs()
    }

    #[test]
    fn n3_closed_form_is_pi4_over_5x3() {
        let x = 7.0f64;
        let v = debye_large_x(3, x).unwrap().value;
        assert!(rel(v, std::f64::consts::PI.powi(4) / (5.0 * x.powi(3))) < 1e-14);
    }

    #[test]
    fn matches_oracle_at_large_x() {
        let v = debye_large_x(1, 30.0f64).unwrap().value;
        let o = debye_oracle(&DebyeParams::new(1, 1.0, 30.0).unwrap(), 1e-12).unwrap();
        assert!((v - o.value).abs() <= 1e-10, "{v} vs {}", o.value);

        let v2 = debye_large_x(2, 40.0f64).unwrap().value;
        let o2 = debye_oracle(&DebyeParams::new(2, 1.0, 40.0).unwrap(), 1e-12).unwrap();
        assert!(rel(v2, o2.value) < 1e-9);
    }
}
