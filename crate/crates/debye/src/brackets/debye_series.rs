//! The bracket series of the Debye integral and the labeling of its four
//! candidate solutions.
//!
//! Expanding 1/(e^t - alpha) and e^{t n1} and mapping the finite integral to
//! [0, inf) through y = t/(X - t) turns N X^-N integral t^N/(e^t - alpha)
//! into a five-index, three-bracket series:
//!
//!   N X  sum phi_1..phi_5 (-1)^{n2-n3} n1^{n3} / Gamma(N+n3+2)
//!        alpha^{n2} X^{n3}
//!        <1 + n1 + n2> <N + n3 + 2 + n4 + n5> <N + n3 + n4 + 1>
//!
//! with the dimension N carried symbolically so one enumeration serves every
//! N. Of the C(5,3) = 10 index subsets, six are singular and four solve; the
//! four are labeled S1-S4 by the directions in which alpha and X appear.

use super::solve::enumerate_candidates;
use super::types::{
    AffineConstant, AffineIndexForm, BracketSeries, CoefficientFactor, IndexId, PowerBase,
    Prefactor, SeriesCandidate, Validity,
};
use super::BracketsError;

const N1: IndexId = IndexId(0);
const N2: IndexId = IndexId(1);
const N3: IndexId = IndexId(2);
const N4: IndexId = IndexId(3);
const N5: IndexId = IndexId(4);

/// Builds the five-index bracket series of the Debye integral, N symbolic.
pub fn debye_bracket_series() -> BracketSeries {
    let series = BracketSeries {
        indices: vec![N1, N2, N3, N4, N5],
        prefactor: Prefactor { dimension_exponent: 1, x_exponent: 1 },
        factors: vec![
            CoefficientFactor::Sign {
                arg: AffineIndexForm::from_terms(&[(N2, 1), (N3, -1)], AffineConstant::zero()),
            },
            CoefficientFactor::Power {
                base: PowerBase::Index(N1),
                arg: AffineIndexForm::single(N3),
            },
            CoefficientFactor::GammaDen {
                arg: AffineIndexForm::from_terms(&[(N3, 1)], AffineConstant::in_n(1, 2)),
            },
            CoefficientFactor::Power {
                base: PowerBase::Alpha,
                arg: AffineIndexForm::single(N2),
            },
            CoefficientFactor::Power {
                base: PowerBase::UpperLimit,
                arg: AffineIndexForm::single(N3),
            },
        ],
        brackets: vec![
            AffineIndexForm::from_terms(&[(N1, 1), (N2, 1)], AffineConstant::integer(1)),
            AffineIndexForm::from_terms(
                &[(N3, 1), (N4, 1), (N5, 1)],
                AffineConstant::in_n(1, 2),
            ),
            AffineIndexForm::from_terms(&[(N3, 1), (N4, 1)], AffineConstant::in_n(1, 1)),
        ],
    };
    debug_assert!(series.validate().is_ok());
    series
}

/// The four solution shapes, named by the directions of the alpha and X
/// powers: S1 descends in alpha and ascends in X, S2 ascends in both, S3
/// ascends in alpha and descends in X, S4 descends in both (and its n1 = 0
/// term diverges, so it is flagged rather than summed).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SeriesLabel {
    S1,
    S2,
    S3,
    S4,
}

impl std::fmt::Display for SeriesLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SeriesLabel::S1 => write!(f, "S1"),
            SeriesLabel::S2 => write!(f, "S2"),
            SeriesLabel::S3 => write!(f, "S3"),
            SeriesLabel::S4 => write!(f, "S4"),
        }
    }
}

impl SeriesLabel {
    /// Heuristic convergence domain, to be confirmed numerically.
    pub fn convergence_domain(self) -> &'static str {
        match self {
            SeriesLabel::S1 => "alpha > e^X (descending powers of alpha)",
            SeriesLabel::S2 => "0 < alpha < 1, or alpha = 1 with a tail completion",
            SeriesLabel::S3 => "X >> 1 with alpha <= 1 (descending powers of X)",
            SeriesLabel::S4 => "none: the n1 = 0 term diverges",
        }
    }
}

/// A labeled solution of the Debye bracket series.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledCandidate {
    pub label: SeriesLabel,
    pub candidate: SeriesCandidate,
}

/// Runs the enumeration on the Debye series and labels the four solvable
/// candidates by their power directions.
pub fn classify_debye_candidates(
    series: &BracketSeries,
) -> Result<(Vec<LabeledCandidate>, Vec<SeriesCandidate>), BracketsError> {
    let all = enumerate_candidates(series)?;
    let mut labeled = Vec::new();
    let mut singular = Vec::new();
    for cand in all {
        if cand.validity == Validity::Singular {
            singular.push(cand);
            continue;
        }
        // Direction of the alpha power: the exponent n2 after substitution
        // either keeps a positive free coefficient (ascending) or not.
        let alpha_arg = AffineIndexForm::single(N2).substitute(&cand.bound_indices);
        let x_arg = AffineIndexForm::single(N3).substitute(&cand.bound_indices);
        let ascending = |form: &AffineIndexForm| {
            form.coeffs.values().any(|c| c > &num_rational::Rational64::from_integer(0))
        };
        let label = match (ascending(&alpha_arg), ascending(&x_arg)) {
            (false, true) => SeriesLabel::S1,
            (true, true) => SeriesLabel::S2,
            (true, false) => SeriesLabel::S3,
            (false, false) => SeriesLabel::S4,
        };
        labeled.push(LabeledCandidate { label, candidate: cand });
    }
    labeled.sort_by_key(|l| l.label);
    Ok((labeled, singular))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn structure_counts() {
        let s = debye_bracket_series();
        assert_eq!(s.indices.len(), 5); // one phi weight per index
        assert_eq!(s.brackets.len(), 3);
        assert_eq!(s.prefactor, Prefactor { dimension_exponent: 1, x_exponent: 1 });
    }

    #[test]
    fn brackets_render_at_n3() {
        let s = debye_bracket_series();
        // Substituting N = 3 into the constants: <1 + n1 + n2>,
        // <5 + n3 + n4 + n5>, <4 + n3 + n4>.
        let rendered: Vec<String> = s.brackets.iter().map(|b| b.to_string()).collect();
        assert_eq!(rendered[0], "1 + n1 + n2");
        assert_eq!(rendered[1], "N+2 + n3 + n4 + n5");
        assert_eq!(rendered[2], "N+1 + n3 + n4");
        assert_eq!(s.brackets[1].constant.eval(3), Rational64::from_integer(5));
        assert_eq!(s.brackets[2].constant.eval(3), Rational64::from_integer(4));
    }

    #[test]
    fn ten_subsets_four_solutions() {
        let s = debye_bracket_series();
        let (labeled, singular) = classify_debye_candidates(&s).unwrap();
        assert_eq!(labeled.len() + singular.len(), 10);
        assert_eq!(labeled.len(), 4);
        assert_eq!(singular.len(), 6);
        let labels: Vec<_> = labeled.iter().map(|l| l.label).collect();
        assert_eq!(
            labels,
            vec![SeriesLabel::S1, SeriesLabel::S2, SeriesLabel::S3, SeriesLabel::S4]
        );
    }

    #[test]
    fn solutions_have_unit_determinant_and_fixed_n5() {
        let s = debye_bracket_series();
        let (labeled, _) = classify_debye_candidates(&s).unwrap();
        for l in &labeled {
            assert_eq!(l.candidate.abs_det, Rational64::from_integer(1), "{}", l.label);
            // Every solvable subset pins n5 = -1 (difference of the last two
            // brackets).
            if let Some(n5) = l.candidate.bound_indices.get(&N5) {
                assert!(n5.is_constant());
                assert_eq!(n5.constant.eval(7), Rational64::from_integer(-1));
            }
        }
    }

    #[test]
    fn s4_flagged_divergent_at_n1_zero() {
        let s = debye_bracket_series();
        let (labeled, _) = classify_debye_candidates(&s).unwrap();
        let s4 = labeled.iter().find(|l| l.label == SeriesLabel::S4).unwrap();
        match &s4.candidate.validity {
            Validity::Divergent { reason } => {
                assert!(reason.contains("n1 = 0"), "reason: {reason}");
            }
            v => panic!("S4 should be divergent, got {v:?}"),
        }
        // The other three are usable.
        for l in &labeled {
            if l.label != SeriesLabel::S4 {
                assert!(l.candidate.validity.is_valid(), "{} invalid", l.label);
            }
        }
    }

    #[test]
    fn free_index_structure_matches_solution_shapes() {
        let s = debye_bracket_series();
        let (labeled, _) = classify_debye_candidates(&s).unwrap();
        let free_of = |lab: SeriesLabel| {
            labeled
                .iter()
                .find(|l| l.label == lab)
                .unwrap()
                .candidate
                .free_indices
                .clone()
        };
        assert_eq!(free_of(SeriesLabel::S1), vec![N1, N3]);
        assert_eq!(free_of(SeriesLabel::S2), vec![N2, N3]);
        assert_eq!(free_of(SeriesLabel::S3), vec![N2, N4]);
        assert_eq!(free_of(SeriesLabel::S4), vec![N1, N4]);
    }

    #[test]
    fn bracket_vanishing_is_exact() {
        let s = debye_bracket_series();
        let (labeled, _) = classify_debye_candidates(&s).unwrap();
        for l in &labeled {
            for bracket in &s.brackets {
                let sub = bracket.substitute(&l.candidate.bound_indices);
                assert!(
                    sub.is_identically_zero(),
                    "{}: bracket {bracket} -> {sub}",
                    l.label
                );
            }
        }
    }

    #[test]
    fn determinants_cross_checked_by_cofactor() {
        use crate::brackets::solve::{det_cofactor, subsystem_matrix};
        use num_traits::Signed;
        let s = debye_bracket_series();
        let (labeled, _) = classify_debye_candidates(&s).unwrap();
        for l in &labeled {
            let bound_ids: Vec<IndexId> =
                l.candidate.bound_indices.keys().copied().collect();
            let m = subsystem_matrix(&s, &bound_ids);
            assert_eq!(det_cofactor(&m).abs(), l.candidate.abs_det, "{}", l.label);
        }
    }
}
