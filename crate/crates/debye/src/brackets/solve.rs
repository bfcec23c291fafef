//! Enumeration of candidate series: every size-r index subset (r = bracket
//! count) defines a square rational system from the vanishing brackets;
//! solving it exactly gives the bound-index forms and |det A|. Floating
//! point never touches the index solving.

use std::collections::BTreeMap;

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use super::types::{
    AffineConstant, AffineIndexForm, BracketSeries, CoefficientFactor, IndexId, PowerBase,
    SeriesCandidate, Validity,
};
use super::BracketsError;

/// Gauss-Jordan with exact rational pivots on `A * bound = rhs`, the
/// right-hand sides being affine forms over the free indices (and N).
/// Returns the bound forms and |det A|, or None when singular.
fn solve_exact(
    bound_ids: &[IndexId],
    matrix: &[Vec<Rational64>],
    rhs: &[AffineIndexForm],
) -> Option<(BTreeMap<IndexId, AffineIndexForm>, Rational64)> {
    let r = bound_ids.len();
    let mut a: Vec<Vec<Rational64>> = matrix.to_vec();
    let mut b: Vec<AffineIndexForm> = rhs.to_vec();
    let mut det = Rational64::one();

    for col in 0..r {
        let pivot_row = (col..r).find(|&i| !a[i][col].is_zero())?;
        if pivot_row != col {
            a.swap(pivot_row, col);
            b.swap(pivot_row, col);
            det = -det;
        }
        let pivot = a[col][col];
        det *= pivot;
        for cell in a[col][col..r].iter_mut() {
            *cell /= pivot;
        }
        b[col] = b[col].scale(pivot.recip());
        for i in 0..r {
            if i == col || a[i][col].is_zero() {
                continue;
            }
            let factor = a[i][col];
            let pivot_row: Vec<Rational64> = a[col][col..r].to_vec();
            for (cell, p) in a[i][col..r].iter_mut().zip(pivot_row) {
                *cell -= factor * p;
            }
            b[i] = b[i].clone().add_scaled(-factor, &b[col]);
        }
    }
    let mut out = BTreeMap::new();
    for (i, id) in bound_ids.iter().enumerate() {
        out.insert(*id, b[i].clone());
    }
    Some((out, det.abs()))
}

/// Determinant by cofactor expansion, the independent route used to
/// cross-check the pivot product of `solve_exact`.
pub(crate) fn det_cofactor(m: &[Vec<Rational64>]) -> Rational64 {
    let n = m.len();
    if n == 0 {
        return Rational64::one();
    }
    if n == 1 {
        return m[0][0];
    }
    let mut acc = Rational64::zero();
    for (j, lead) in m[0].iter().enumerate() {
        if lead.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Rational64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, v)| *v)
                    .collect()
            })
            .collect();
        let sign = if j % 2 == 0 { Rational64::one() } else { -Rational64::one() };
        acc += sign * *lead * det_cofactor(&minor);
    }
    acc
}

/// The square subsystem for one subset choice, exposed so tests can recompute
/// |det A| independently.
pub(crate) fn subsystem_matrix(s: &BracketSeries, bound_ids: &[IndexId]) -> Vec<Vec<Rational64>> {
    s.brackets
        .iter()
        .map(|bracket| bound_ids.iter().map(|id| bracket.coeff(*id)).collect())
        .collect()
}

fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, r, &mut Vec::with_capacity(r), &mut out);
    out
}

/// One candidate per size-r index subset: solvable subsets yield bound-index
/// forms checked for corner divergence; singular subsets stay in the list,
/// marked, so every subset is classified.
pub fn enumerate_candidates(s: &BracketSeries) -> Result<Vec<SeriesCandidate>, BracketsError> {
    s.validate()?;
    let r = s.brackets.len();
    let mut out = Vec::new();
    for subset in subsets(s.indices.len(), r) {
        let bound_ids: Vec<IndexId> = subset.iter().map(|&i| s.indices[i]).collect();
        let free_ids: Vec<IndexId> = s
            .indices
            .iter()
            .copied()
            .filter(|id| !bound_ids.contains(id))
            .collect();

        // Row i: sum_{j in bound} a_ij n_j = -c_i - sum_{j free} a_ij n_j.
        let matrix = subsystem_matrix(s, &bound_ids);
        let mut rhs = Vec::with_capacity(r);
        for bracket in &s.brackets {
            let mut form = AffineIndexForm {
                coeffs: BTreeMap::new(),
                constant: bracket.constant.scale(-Rational64::one()),
            };
            for id in &free_ids {
                let c = bracket.coeff(*id);
                if !c.is_zero() {
                    form.coeffs.insert(*id, -c);
                }
            }
            rhs.push(form);
        }

        match solve_exact(&bound_ids, &matrix, &rhs) {
            None => out.push(SeriesCandidate {
                bound_indices: bound_ids
                    .iter()
                    .map(|id| (*id, AffineIndexForm::constant(AffineConstant::zero())))
                    .collect(),
                free_indices: free_ids,
                abs_det: Rational64::zero(),
                validity: Validity::Singular,
            }),
            Some((bound, abs_det)) => {
                debug_assert_eq!(det_cofactor(&matrix).abs(), abs_det);
                let validity = classify_corner(s, &bound);
                out.push(SeriesCandidate {
                    bound_indices: bound,
                    free_indices: free_ids,
                    abs_det,
                    validity,
                });
            }
        }
    }
    Ok(out)
}

/// Value of a substituted form at the corner (all free indices zero), as an
/// affine-in-N constant, plus whether raising free indices can increase it.
struct CornerView {
    value: AffineConstant,
    free_can_increase: bool,
}

fn corner_view(form: &AffineIndexForm) -> CornerView {
    CornerView {
        value: form.constant,
        free_can_increase: form.coeffs.values().any(|c| c.is_positive()),
    }
}

/// Non-positive integer for every dimension N >= 1, stated on p*N + q:
/// slope non-positive and the value at N = 1 already non-positive.
fn nonpositive_integer_all_n(c: &AffineConstant) -> bool {
    c.n_coeff.is_integer()
        && c.offset.is_integer()
        && !c.n_coeff.is_positive()
        && !(c.n_coeff + c.offset).is_positive()
}

fn negative_all_n(c: &AffineConstant) -> bool {
    !c.n_coeff.is_positive() && (c.n_coeff + c.offset).is_negative()
}

/// Corner analysis: with every free index at zero, a candidate diverges
/// beyond repair when a numerator gamma (including the Gamma(-n*) weights)
/// sits at a non-positive integer with no free-index escape, or when an
/// index-valued power base is zero under a negative exponent with no escape.
/// Poles in denominator gammas merely zero the term.
fn classify_corner(
    s: &BracketSeries,
    bound: &BTreeMap<IndexId, AffineIndexForm>,
) -> Validity {
    for (id, form) in bound {
        // Rule-4 weight Gamma(-n_i*).
        let view = corner_view(&form.negate());
        if !view.free_can_increase && nonpositive_integer_all_n(&view.value) {
            return Validity::Divergent {
                reason: format!(
                    "corner weight Gamma(-{id}*) sits at a non-positive integer for every N >= 1"
                ),
            };
        }
    }
    for factor in &s.factors {
        match factor {
            CoefficientFactor::GammaNum { arg } => {
                let view = corner_view(&arg.substitute(bound));
                if !view.free_can_increase && nonpositive_integer_all_n(&view.value) {
                    return Validity::Divergent {
                        reason: format!(
                            "numerator Gamma({arg}) sits at a non-positive integer with no free-index escape"
                        ),
                    };
                }
            }
            CoefficientFactor::Power { base, arg } => {
                let base_is_zero_at_corner = match base {
                    PowerBase::Index(id) => match bound.get(id) {
                        Some(form) => {
                            let v = corner_view(form);
                            v.value.is_zero() && !v.free_can_increase
                        }
                        // A free base index takes the value 0 at the corner.
                        None => true,
                    },
                    _ => false,
                };
                if base_is_zero_at_corner {
                    let exp = corner_view(&arg.substitute(bound));
                    if !exp.free_can_increase && negative_all_n(&exp.value) {
                        let base_name = match base {
                            PowerBase::Index(id) => format!("{id}"),
                            _ => String::from("base"),
                        };
                        return Validity::Divergent {
                            reason: format!(
                                "the term with {base_name} = 0 diverges: zero base under the negative exponent {} with no free-index escape",
                                exp.value
                            ),
                        };
                    }
                }
            }
            _ => {}
        }
    }
    Validity::Valid
}
