//! Terms of a solved candidate series.
//!
//! For a free-index assignment the bound indices take their affine values;
//! each bound index contributes the Rule-4 weight Gamma(-n*), each free
//! index keeps its phi weight (-1)^k / k!, and the coefficient factors are
//! evaluated at the assignment. Two routes exist: an exact-rational term
//! descriptor (gamma arguments must land on integers, which the Debye chain
//! guarantees) and a log-magnitude numeric evaluation that stays stable for
//! large indices.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Signed, Zero};

use crate::real::Real;
use crate::special::ln_gamma_signed;

use super::types::{
    BracketSeries, CoefficientFactor, IndexId, PowerBase, SeriesCandidate,
};
use super::BracketsError;

/// Exact symbolic descriptor of one series term: rational coefficient plus
/// the exponents of the opaque bases alpha and X.
#[derive(Debug, Clone, PartialEq)]
pub struct TermDescriptor {
    pub coeff: BigRational,
    pub alpha_exponent: Rational64,
    pub x_exponent: Rational64,
    /// A denominator gamma pole annihilated the term.
    pub is_zero: bool,
}

fn exact_gamma_at(v: Rational64, context: &str) -> Result<BigRational, BracketsError> {
    if !v.is_integer() {
        return Err(BracketsError::Structure(format!(
            "{context}: gamma argument {v} is not an integer; exact descriptors cover integer arguments only"
        )));
    }
    let n = v.to_integer();
    if n <= 0 {
        return Err(BracketsError::GammaPole(format!(
            "{context}: gamma pole at {n}"
        )));
    }
    let mut acc = BigInt::one();
    for j in 2..n {
        acc *= BigInt::from(j);
    }
    Ok(BigRational::from_integer(acc))
}

fn rat_pow(base: Rational64, exp: Rational64, context: &str) -> Result<BigRational, BracketsError> {
    if !exp.is_integer() {
        return Err(BracketsError::Structure(format!(
            "{context}: exponent {exp} is not an integer"
        )));
    }
    let e = exp.to_integer();
    if base.is_zero() {
        return match e.cmp(&0) {
            std::cmp::Ordering::Greater => Ok(BigRational::zero()),
            std::cmp::Ordering::Equal => Ok(BigRational::one()),
            std::cmp::Ordering::Less => Err(BracketsError::GammaPole(format!(
                "{context}: zero base raised to negative exponent {e}"
            ))),
        };
    }
    let big = BigRational::new(BigInt::from(*base.numer()), BigInt::from(*base.denom()));
    let mut acc = BigRational::one();
    let pos = big.clone();
    let factor = if e >= 0 { pos } else { big.recip() };
    for _ in 0..e.unsigned_abs() {
        acc *= factor.clone();
    }
    Ok(acc)
}

/// Exact term descriptor for `candidate` at the given free-index assignment
/// and concrete dimension. Divergence-flagged candidates are allowed (their
/// terms away from the flagged corner are perfectly well defined); singular
/// subsets have no terms at all.
pub fn term_descriptor(
    candidate: &SeriesCandidate,
    series: &BracketSeries,
    n_dim: i64,
    assignment: &[(IndexId, u64)],
) -> Result<TermDescriptor, BracketsError> {
    if matches!(candidate.validity, super::types::Validity::Singular) {
        return Err(BracketsError::InvalidCandidate(
            "singular subsystem has no series terms".into(),
        ));
    }
    let mut values: BTreeMap<IndexId, Rational64> = BTreeMap::new();
    for (id, v) in assignment {
        values.insert(*id, Rational64::from_integer(*v as i64));
    }
    for id in &candidate.free_indices {
        values.entry(*id).or_insert_with(Rational64::zero);
    }
    for (id, form) in &candidate.bound_indices {
        let v = form.eval(&values, n_dim);
        values.insert(*id, v);
    }

    let det_big = BigRational::new(
        BigInt::from(*candidate.abs_det.numer()),
        BigInt::from(*candidate.abs_det.denom()),
    );
    let mut coeff = det_big.recip();
    let mut alpha_exponent = Rational64::zero();
    let mut x_exponent = Rational64::from_integer(series.prefactor.x_exponent as i64);
    let mut is_zero = false;

    // N^a prefactor.
    coeff *= rat_pow(
        Rational64::from_integer(n_dim),
        Rational64::from_integer(series.prefactor.dimension_exponent as i64),
        "prefactor N",
    )?;

    // phi weights on free indices, Gamma(-n*) on bound ones.
    for (id, v) in assignment {
        let k = *v as i64;
        let sign = if k % 2 == 0 { BigRational::one() } else { -BigRational::one() };
        coeff *= sign / exact_gamma_at(Rational64::from_integer(k + 1), &format!("phi_{id}"))?;
    }
    for id in candidate.bound_indices.keys() {
        let v = values[id];
        coeff *= exact_gamma_at(-v, &format!("Gamma(-{id}*)"))?;
    }

    for factor in &series.factors {
        match factor {
            CoefficientFactor::GammaNum { arg } => {
                coeff *= exact_gamma_at(arg.eval(&values, n_dim), "numerator gamma")?;
            }
            CoefficientFactor::GammaDen { arg } => {
                let v = arg.eval(&values, n_dim);
                if v.is_integer() && v.to_integer() <= 0 {
                    is_zero = true; // 1/Gamma(non-positive integer) = 0
                } else {
                    coeff /= exact_gamma_at(v, "denominator gamma")?;
                }
            }
            CoefficientFactor::Sign { arg } => {
                let v = arg.eval(&values, n_dim);
                if !v.is_integer() {
                    return Err(BracketsError::Structure(format!(
                        "sign exponent {v} is not an integer"
                    )));
                }
                if v.to_integer().rem_euclid(2) == 1 {
                    coeff = -coeff;
                }
            }
            CoefficientFactor::Power { base, arg } => {
                let e = arg.eval(&values, n_dim);
                match base {
                    PowerBase::Alpha => alpha_exponent += e,
                    PowerBase::UpperLimit => x_exponent += e,
                    PowerBase::Dimension => {
                        coeff *= rat_pow(Rational64::from_integer(n_dim), e, "N power")?;
                    }
                    PowerBase::Index(id) => {
                        coeff *= rat_pow(values[id], e, &format!("{id} as base"))?;
                    }
                    PowerBase::OnePlusIndex(id) => {
                        coeff *= rat_pow(
                            values[id] + Rational64::one(),
                            e,
                            &format!("(1+{id}) as base"),
                        )?;
                    }
                }
            }
        }
    }
    Ok(TermDescriptor { coeff, alpha_exponent, x_exponent, is_zero })
}

/// Result of summing a candidate numerically.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateEvaluation<T> {
    pub value: T,
    pub err_estimate: T,
    pub terms_used: usize,
    /// Isolated gamma-pole terms skipped during summation.
    pub skipped_poles: usize,
}

enum NumericTerm<T> {
    Value(T),
    Zero,
    Pole,
}

/// One term in log-magnitude form, exponentiated at the end; stable for
/// assignments far beyond factorial overflow.
fn numeric_term<T: Real>(
    candidate: &SeriesCandidate,
    series: &BracketSeries,
    n_dim: i64,
    alpha: T,
    x: T,
    assignment: &BTreeMap<IndexId, Rational64>,
) -> Result<NumericTerm<T>, BracketsError> {
    let mut values = assignment.clone();
    for (id, form) in &candidate.bound_indices {
        let v = form.eval(assignment, n_dim);
        values.insert(*id, v);
    }
    let to_t = |r: Rational64| T::of_i64(*r.numer()) / T::of_i64(*r.denom());

    let mut ln_mag = -to_t(candidate.abs_det).ln();
    let mut negative = false;

    let apply_gamma = |v: Rational64, ln_mag: &mut T, negative: &mut bool, num: bool| {
        match ln_gamma_signed(to_t(v)) {
            Ok((l, s)) => {
                if num {
                    *ln_mag += l;
                } else {
                    *ln_mag -= l;
                }
                if s < 0 {
                    *negative = !*negative;
                }
                None
            }
            Err(_) => Some(()), // pole
        }
    };

    for (id, v) in assignment {
        // phi_k = (-1)^k / k!
        let k = v.to_integer();
        if k % 2 == 1 {
            negative = !negative;
        }
        if apply_gamma(
            *v + Rational64::one(),
            &mut ln_mag,
            &mut negative,
            false,
        )
        .is_some()
        {
            return Err(BracketsError::GammaPole(format!("phi weight at {id} = {v}")));
        }
    }
    for id in candidate.bound_indices.keys() {
        let v = values[id];
        if apply_gamma(-v, &mut ln_mag, &mut negative, true).is_some() {
            return Ok(NumericTerm::Pole);
        }
    }

    for factor in &series.factors {
        match factor {
            CoefficientFactor::GammaNum { arg } => {
                let v = arg.eval(&values, n_dim);
                if apply_gamma(v, &mut ln_mag, &mut negative, true).is_some() {
                    return Ok(NumericTerm::Pole);
                }
            }
            CoefficientFactor::GammaDen { arg } => {
                let v = arg.eval(&values, n_dim);
                if v.is_integer() && v.to_integer() <= 0 {
                    return Ok(NumericTerm::Zero);
                }
                if apply_gamma(v, &mut ln_mag, &mut negative, false).is_some() {
                    return Ok(NumericTerm::Zero);
                }
            }
            CoefficientFactor::Sign { arg } => {
                let v = arg.eval(&values, n_dim);
                if !v.is_integer() {
                    return Err(BracketsError::Structure(format!(
                        "sign exponent {v} is not an integer"
                    )));
                }
                if v.to_integer().rem_euclid(2) == 1 {
                    negative = !negative;
                }
            }
            CoefficientFactor::Power { base, arg } => {
                let e = arg.eval(&values, n_dim);
                let ef = to_t(e);
                let base_val: T = match base {
                    PowerBase::Alpha => alpha,
                    PowerBase::UpperLimit => x,
                    PowerBase::Dimension => T::of_i64(n_dim),
                    PowerBase::Index(id) => to_t(values[id]),
                    PowerBase::OnePlusIndex(id) => to_t(values[id]) + T::one(),
                };
                if base_val == T::zero() {
                    if e.is_positive() {
                        return Ok(NumericTerm::Zero);
                    }
                    if e.is_zero() {
                        continue; // 0^0 = 1 by the series convention
                    }
                    return Ok(NumericTerm::Pole);
                }
                if base_val < T::zero() {
                    if !e.is_integer() {
                        return Err(BracketsError::Structure(format!(
                            "negative base {base_val} under non-integer exponent {e}"
                        )));
                    }
                    if e.to_integer().rem_euclid(2) == 1 {
                        negative = !negative;
                    }
                    ln_mag += ef * (-base_val).ln();
                } else {
                    ln_mag += ef * base_val.ln();
                }
            }
        }
    }

    // Prefactor N^a X^b.
    if series.prefactor.dimension_exponent > 0 {
        if n_dim == 0 {
            return Ok(NumericTerm::Zero);
        }
        ln_mag += T::of_i64(series.prefactor.dimension_exponent as i64)
            * T::of_i64(n_dim).ln();
    }
    ln_mag += T::of_i64(series.prefactor.x_exponent as i64) * x.ln();

    let mag = ln_mag.exp();
    Ok(NumericTerm::Value(if negative { -mag } else { mag }))
}

/// Sums a valid candidate over its free indices: the inner index is summed
/// to convergence per outer value, outer rows stop once a detected geometric
/// (or, failing that, power-law) tail bound drops below `tol` relative.
pub fn evaluate_candidate<T: Real>(
    candidate: &SeriesCandidate,
    series: &BracketSeries,
    n_dim: i64,
    alpha: T,
    x: T,
    max_terms: usize,
    tol: T,
) -> Result<CandidateEvaluation<T>, BracketsError> {
    if !candidate.validity.is_valid() {
        return Err(BracketsError::InvalidCandidate(format!(
            "{:?}",
            candidate.validity
        )));
    }
    let free = &candidate.free_indices;
    if free.is_empty() {
        let mut sum = T::zero();
        let mut skipped = 0usize;
        match numeric_term(candidate, series, n_dim, alpha, x, &BTreeMap::new())? {
            NumericTerm::Value(v) => sum = v,
            NumericTerm::Zero => {}
            NumericTerm::Pole => skipped += 1,
        }
        return Ok(CandidateEvaluation {
            value: sum,
            err_estimate: sum.abs() * T::epsilon(),
            terms_used: 1,
            skipped_poles: skipped,
        });
    }
    if free.len() > 2 {
        return Err(BracketsError::Structure(format!(
            "evaluation supports up to two free indices, candidate has {}",
            free.len()
        )));
    }

    let mut sum = T::zero();
    let mut comp = T::zero();
    let mut terms_used = 0usize;
    let mut skipped = 0usize;
    let mut row_mags: Vec<T> = Vec::new();
    let mut converged = free.is_empty();
    let mut tail = T::zero();

    'outer: for outer in 0..max_terms {
        let mut row = T::zero();
        let mut assignment = BTreeMap::new();
        assignment.insert(free[0], Rational64::from_integer(outer as i64));
        if free.len() == 1 {
            match numeric_term(candidate, series, n_dim, alpha, x, &assignment)? {
                NumericTerm::Value(v) => row = v,
                NumericTerm::Zero => {}
                NumericTerm::Pole => skipped += 1,
            }
            terms_used += 1;
        } else {
            let mut zero_streak = 0usize;
            for inner in 0..max_terms {
                assignment.insert(free[1], Rational64::from_integer(inner as i64));
                terms_used += 1;
                match numeric_term(candidate, series, n_dim, alpha, x, &assignment)? {
                    NumericTerm::Value(v) => {
                        zero_streak = 0;
                        row += v;
                        if v.abs() <= T::epsilon() * row.abs() * T::of(0.01) && inner > 4 {
                            break;
                        }
                    }
                    NumericTerm::Zero => {
                        zero_streak += 1;
                        // A denominator gamma that truncates the row zeroes
                        // every later inner term too.
                        if zero_streak > 2 {
                            break;
                        }
                    }
                    NumericTerm::Pole => skipped += 1,
                }
                if !row.is_finite() {
                    return Err(BracketsError::Convergence(format!(
                        "inner row {outer} overflowed"
                    )));
                }
            }
        }

        let s = sum + row;
        comp += if sum.abs() >= row.abs() { (sum - s) + row } else { (row - s) + sum };
        sum = s;
        row_mags.push(row.abs());

        // Tail control from the last few row magnitudes.
        if row_mags.len() >= 4 {
            let m = row_mags.len();
            let (a, b) = (row_mags[m - 2], row_mags[m - 1]);
            if m >= 6 && b > a && a > row_mags[m - 3] && row_mags[m - 3] > row_mags[m - 4] {
                return Err(BracketsError::Convergence(format!(
                    "outer rows grow ({:e} -> {:e}): parameters sit outside this candidate's convergence domain",
                    a.as_f64(),
                    b.as_f64()
                )));
            }
            if b == T::zero() && a == T::zero() {
                converged = true;
                tail = T::zero();
                break 'outer;
            }
            if a > T::zero() && b > T::zero() {
                let ratio = b / a;
                if ratio < T::of(0.9) {
                    tail = b * ratio / (T::one() - ratio);
                    if tail <= tol * sum.abs() {
                        converged = true;
                        break 'outer;
                    }
                } else if ratio < T::one() {
                    // Power-law fallback: fit p from two octaves apart.
                    let half = row_mags[m / 2];
                    if half > T::zero() {
                        let p = (half / b).ln()
                            / (T::of_usize(m - 1) / T::of_usize(m / 2)).ln();
                        if p > T::one() {
                            tail = b * T::of_usize(m - 1) / (p - T::one());
                            if tail <= tol * sum.abs() {
                                converged = true;
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
    }

    let value = sum + comp;
    if !converged {
        return Err(BracketsError::Convergence(format!(
            "tail bound {:e} still above {:e} relative after {max_terms} outer rows",
            tail.as_f64(),
            tol.as_f64()
        )));
    }
    Ok(CandidateEvaluation {
        value,
        err_estimate: tail + value.abs() * T::epsilon() * T::of(16.0),
        terms_used,
        skipped_poles: skipped,
    })
}
