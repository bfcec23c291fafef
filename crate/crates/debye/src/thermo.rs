//! Debye-model thermodynamics: internal energy U(T) = 3 N k_B T D_3(Theta/T),
//! heat capacity c_V in both closed forms, and the four asymptotic limits.
//!
//! Small u = Theta/T routes through the even-Bernoulli expansions of D_3 and
//! of D_3 - u D_3' (exact series, no cancellation); large u routes through
//! the polylogarithm closed forms, which are well conditioned there. The
//! crossover at u = 2 keeps both sides far inside their comfortable ranges,
//! so the high-temperature guard against 1/u^3 cancellation is structural
//! rather than a special case.

use crate::functions::{debye_new_polylog, DebyeError, DebyeParams};
use crate::real::Real;
use crate::special::{bernoulli_f64_ratio, polylog, zeta_int};

/// Route boundary between the Bernoulli expansion and the polylog form.
const U_SWITCH: f64 = 2.0;

/// Absolute bound on the residual imaginary part of the e^{+u} heat form.
const CONTINUATION_IM_TOL: f64 = 1e-9;

/// A solid in the Debye model: particle count, Boltzmann constant (in the
/// caller's unit system, 1 by default at the CLI), and Debye temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolidModel<T> {
    pub n_particles: T,
    pub k_b: T,
    pub theta_d: T,
}

impl<T: Real> SolidModel<T> {
    pub fn new(n_particles: T, k_b: T, theta_d: T) -> Result<Self, DebyeError> {
        if !(n_particles > T::zero() && k_b > T::zero() && theta_d > T::zero()) {
            return Err(DebyeError::Domain(
                "SolidModel requires positive particle count, k_B and Theta_D".into(),
            ));
        }
        Ok(SolidModel { n_particles, k_b, theta_d })
    }
}

/// D_3(u) at alpha = 1 through whichever representation is well conditioned
/// at this u.
pub(crate) fn d3_value<T: Real>(u: T) -> Result<T, DebyeError> {
    if u <= T::of(U_SWITCH) {
        // D_3 = 1 - 3u/8 + 3 sum_{k>=1} B_2k u^2k / ((2k+3) (2k)!)
        let mut sum = T::one() / T::of(3.0) - u / T::of(8.0);
        let mut u_pow = T::one();
        for k in 1..200usize {
            u_pow = u_pow * u * u;
            let term = bernoulli_f64_ratio::<T>(2 * k) * u_pow / (T::of_usize(2 * k) + T::of(3.0));
            sum += term;
            if term.abs() < T::epsilon() * sum.abs() {
                break;
            }
        }
        Ok(T::of(3.0) * sum)
    } else {
        Ok(debye_new_polylog(&DebyeParams::new(3, T::one(), u)?)?.value)
    }
}

/// U(T) = 3 N k_B T D_3(Theta_D / T); exact at all temperatures.
pub fn internal_energy<T: Real>(m: &SolidModel<T>, temperature: T) -> Result<T, DebyeError> {
    if !(temperature > T::zero()) {
        return Err(DebyeError::Domain("temperature must be positive".into()));
    }
    let u = m.theta_d / temperature;
    Ok(T::of(3.0) * m.n_particles * m.k_b * temperature * d3_value(u)?)
}

/// c_V(T) = dU/dT. For u > 2 this is the e^{-u} polylogarithm closed form
///
///   c_V = (12/5) pi^4 N k_B u^-3 - 216 N k_B u^-3 Li_4(e^-u)
///         - 216 N k_B u^-2 Li_3(e^-u) - 108 N k_B u^-1 Li_2(e^-u)
///         - 36 N k_B Li_1(e^-u) - 9 N k_B u e^-u/(1 - e^-u);
///
/// for u <= 2 the equivalent Bernoulli expansion
/// c_V = 3 N k_B (1 + 3 sum_k B_2k (1-2k) u^2k / ((2k+3)(2k)!)).
pub fn heat_capacity<T: Real>(m: &SolidModel<T>, temperature: T) -> Result<T, DebyeError> {
    if !(temperature > T::zero()) {
        return Err(DebyeError::Domain("temperature must be positive".into()));
    }
    let u = m.theta_d / temperature;
    let nk = m.n_particles * m.k_b;
    if u <= T::of(U_SWITCH) {
        let mut sum = T::one() / T::of(3.0);
        let mut u_pow = T::one();
        for k in 1..200usize {
            u_pow = u_pow * u * u;
            let kf = T::of_usize(2 * k);
            let term = bernoulli_f64_ratio::<T>(2 * k) * (T::one() - kf) * u_pow
                / (kf + T::of(3.0));
            sum += term;
            if term.abs() < T::epsilon() * sum.abs() {
                break;
            }
        }
        Ok(T::of(9.0) * nk * sum)
    } else {
        let e = (-u).exp();
        let z4 = zeta_int::<T>(4)?;
        let li4 = polylog(4, e)?;
        let li3 = polylog(3, e)?;
        let li2 = polylog(2, e)?;
        let li1 = polylog(1, e)?;
        let occupancy = u.exp_m1().recip(); // e^-u/(1-e^-u), stable for large u
        Ok(nk
            * (T::of(216.0) * z4 / u.powi(3)
                - T::of(216.0) * li4 / u.powi(3)
                - T::of(216.0) * li3 / u.powi(2)
                - T::of(108.0) * li2 / u
                - T::of(36.0) * li1
                - T::of(9.0) * u * occupancy))
    }
}

/// The equivalent e^{+u} form of c_V through the complex continuation; kept
/// for representation fidelity next to the production e^{-u} path. At high
/// temperature the four continued polylogarithms cancel ~u^-3 of their
/// magnitude, so the assembly runs in complex double-word arithmetic; the
/// residual imaginary part is gated at 1e-9.
pub fn heat_capacity_epos_form<T: Real>(
    m: &SolidModel<T>,
    temperature: T,
) -> Result<T, DebyeError> {
    use crate::dd::Dd;
    use crate::special::polylog_continued_dd;

    if !(temperature > T::zero()) {
        return Err(DebyeError::Domain("temperature must be positive".into()));
    }
    let u = m.theta_d / temperature;
    if u > T::of(690.0) {
        return Err(DebyeError::Domain(format!(
            "e^u overflows for u = {u}; the e^{{+u}} form is unavailable"
        )));
    }
    let nk = m.n_particles * m.k_b;
    let eu = Dd::from_t(u).exp();
    let u_dd = Dd::from_t(u);
    // Li_4(e^u)/u^3 - Li_3(e^u)/u^2 + Li_2(e^u)/(2u) - Li_1(e^u)/6
    let part = polylog_continued_dd(4, eu)?
        .mul_dd(u_dd.powi(-3))
        .sub(polylog_continued_dd(3, eu)?.mul_dd(u_dd.powi(-2)))
        .add(polylog_continued_dd(2, eu)?.mul_dd(u_dd.recip().div_t(T::of(2.0))))
        .sub(polylog_continued_dd(1, eu)?.mul_dd(Dd::one().div_t(T::of(6.0))));
    let residual = (T::of(216.0) * part.im.to_t()).abs();
    if residual > T::of(CONTINUATION_IM_TOL) {
        return Err(DebyeError::ContinuationResidual {
            residual: residual.as_f64(),
            tolerance: CONTINUATION_IM_TOL,
        });
    }
    // -(12/5) pi^4 u^-3 = -216 zeta(4) u^-3, and u e^u/(1-e^u) = -u/(1-e^-u).
    let zeta_term = crate::special::zeta_dd::<T>(4)?.mul(u_dd.powi(-3));
    let boson = -u / (-(-u).exp_m1());
    let total = part
        .re
        .sub(zeta_term)
        .mul_t(T::of(216.0))
        .add_t(T::of(9.0) * boson);
    Ok(nk * total.to_t())
}

/// Quartic high-temperature expansion of D_3.
pub fn d3_high_t_expansion<T: Real>(u: T) -> T {
    T::one() - T::of(3.0 / 8.0) * u + u * u / T::of(20.0) - u.powi(4) / T::of(1680.0)
}

/// Leading low-temperature value 18 zeta(4)/u^3 = pi^4/(5 u^3).
pub fn d3_low_t_limit<T: Real>(u: T) -> T {
    T::PI().powi(4) / (T::of(5.0) * u.powi(3))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    HighT,
    LowT,
}

/// The truncated asymptotic formulas for U and c_V in either limit:
/// high T keeps U through the Theta^4/T^3 term and c_V through (Theta/T)^4;
/// low T is the T^4 law and its derivative.
pub fn asymptotic_u_and_cv<T: Real>(
    m: &SolidModel<T>,
    temperature: T,
    regime: Regime,
) -> Result<(T, T), DebyeError> {
    if !(temperature > T::zero()) {
        return Err(DebyeError::Domain("temperature must be positive".into()));
    }
    let nk = m.n_particles * m.k_b;
    let theta = m.theta_d;
    match regime {
        Regime::HighT => {
            let u = theta / temperature;
            let energy = T::of(3.0) * nk * temperature - T::of(9.0 / 8.0) * nk * theta
                + T::of(3.0 / 20.0) * nk * theta * theta / temperature
                - nk * theta.powi(4) / (T::of(560.0) * temperature.powi(3));
            let cv = T::of(3.0) * nk - T::of(3.0 / 20.0) * nk * u * u
                + T::of(3.0 / 560.0) * nk * u.powi(4);
            Ok((energy, cv))
        }
        Regime::LowT => {
            let pi4 = T::PI().powi(4);
            let energy =
                T::of(3.0 / 5.0) * pi4 * nk * temperature.powi(4) / theta.powi(3);
            let cv = T::of(12.0 / 5.0) * pi4 * (temperature / theta).powi(3) * nk;
            Ok((energy, cv))
        }
    }
}
