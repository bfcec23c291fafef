//! The brackets engine must regenerate the four double-sum solutions of the
//! Debye integral mechanically: exact structural checks on the enumeration,
//! exact rational equality of term descriptors against the written-out
//! summands, and numeric agreement of the summed candidates with the
//! quadrature oracle and closed forms.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};

use debye::brackets::{
    classify_debye_candidates, debye_bracket_series, enumerate_candidates, evaluate_candidate,
    term_descriptor, IndexId, SeriesLabel, Validity,
};
use debye::{debye_large_x, debye_oracle, DebyeParams};

const N1: IndexId = IndexId(0);
const N2: IndexId = IndexId(1);
const N3: IndexId = IndexId(2);
const N4: IndexId = IndexId(3);

fn fact(n: i64) -> BigRational {
    assert!(n >= 0, "factorial of negative {n}");
    let mut acc = BigInt::one();
    for j in 2..=n {
        acc *= BigInt::from(j);
    }
    BigRational::from_integer(acc)
}

fn ipow(base: i64, exp: i64) -> BigRational {
    let b = BigRational::from_integer(BigInt::from(base));
    let mut acc = BigRational::one();
    for _ in 0..exp.unsigned_abs() {
        acc *= b.clone();
    }
    if exp < 0 {
        acc.recip()
    } else {
        acc
    }
}

fn sign(parity: i64) -> BigRational {
    if parity.rem_euclid(2) == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// Written-out summand of each solution at (m1, m2): the rational
/// coefficient together with the exponents of the opaque bases alpha and X.
fn printed_summand(
    label: SeriesLabel,
    n: i64,
    m1: i64,
    m2: i64,
) -> (BigRational, Rational64, Rational64) {
    let rat = Rational64::from_integer;
    match label {
        // -(N X / alpha) Gamma(N+1+m2)/Gamma(N+2+m2) m1^m2/m2! (1/alpha)^m1 X^m2
        SeriesLabel::S1 => {
            let coeff = -BigRational::from_integer(BigInt::from(n))
                * fact(n + m2)
                / fact(n + 1 + m2)
                * ipow(m1, m2)
                / fact(m2);
            (coeff, rat(-m1 - 1), rat(m2 + 1))
        }
        // N X (-1)^m2 Gamma(N+1+m2)/Gamma(N+2+m2) (1+m1)^m2/m2! alpha^m1 X^m2
        SeriesLabel::S2 => {
            let coeff = sign(m2)
                * BigRational::from_integer(BigInt::from(n))
                * fact(n + m2)
                / fact(n + 1 + m2)
                * ipow(1 + m1, m2)
                / fact(m2);
            (coeff, rat(m1), rat(m2 + 1))
        }
        // (N/X^N) (-1)^m2 Gamma(N+1+m2)/Gamma(1-m2) (1+m1)^{-1-N-m2}/m2!
        //   alpha^m1 X^{-m2};   1/Gamma(1-m2) truncates every m2 >= 1 row.
        SeriesLabel::S3 => {
            let coeff = if m2 >= 1 {
                BigRational::from_integer(BigInt::from(0))
            } else {
                sign(m2)
                    * BigRational::from_integer(BigInt::from(n))
                    * fact(n + m2)
                    * ipow(1 + m1, -1 - n - m2)
                    / fact(m2)
            };
            (coeff, rat(m1), rat(-m2 - n))
        }
        // (-1)^N (N/(X^N alpha)) Gamma(N+1+m2)/Gamma(1-m2) m1^{-N-1-m2}/m2!
        //   (1/alpha)^m1 X^{-m2};  the X power descends like S3's.
        SeriesLabel::S4 => {
            let coeff = if m2 >= 1 {
                BigRational::from_integer(BigInt::from(0))
            } else {
                sign(n)
                    * BigRational::from_integer(BigInt::from(n))
                    * fact(n + m2)
                    * ipow(m1, -n - 1 - m2)
                    / fact(m2)
            };
            (coeff, rat(-m1 - 1), rat(-m2 - n))
        }
    }
}

/// Engine free indices carrying the (outer, inner) roles of each printed sum.
fn printed_index_pair(label: SeriesLabel) -> (IndexId, IndexId) {
    match label {
        SeriesLabel::S1 => (N1, N3),
        SeriesLabel::S2 => (N2, N3),
        SeriesLabel::S3 => (N2, N4),
        SeriesLabel::S4 => (N1, N4),
    }
}

#[test]
fn ten_subsets_classified_six_singular() {
    let series = debye_bracket_series();
    let all = enumerate_candidates(&series).unwrap();
    assert_eq!(all.len(), 10);
    let singular: Vec<Vec<IndexId>> = all
        .iter()
        .filter(|c| c.validity == Validity::Singular)
        .map(|c| {
            series
                .indices
                .iter()
                .copied()
                .filter(|id| !c.free_indices.contains(id))
                .collect()
        })
        .collect();
    // The six non-invertible bound sets, discovered by the enumeration.
    let expect: Vec<Vec<usize>> = vec![
        vec![0, 1, 2],
        vec![0, 1, 3],
        vec![0, 1, 4],
        vec![0, 2, 3],
        vec![1, 2, 3],
        vec![2, 3, 4],
    ];
    let got: Vec<Vec<usize>> = singular
        .iter()
        .map(|ids| ids.iter().map(|id| id.0).collect())
        .collect();
    assert_eq!(got, expect);
}

#[test]
fn bracket_vanishing_exact_for_every_solution() {
    let series = debye_bracket_series();
    for cand in enumerate_candidates(&series).unwrap() {
        if cand.validity == Validity::Singular {
            continue;
        }
        for bracket in &series.brackets {
            assert!(bracket.substitute(&cand.bound_indices).is_identically_zero());
        }
        assert_eq!(cand.abs_det, Rational64::one());
    }
}

#[test]
fn descriptors_match_printed_summands_exactly() {
    let series = debye_bracket_series();
    let (labeled, _) = classify_debye_candidates(&series).unwrap();
    assert_eq!(labeled.len(), 4);
    for l in &labeled {
        let (outer, inner) = printed_index_pair(l.label);
        assert_eq!(l.candidate.free_indices, vec![outer, inner], "{}", l.label);
        for n_dim in [1i64, 3, 5] {
            for m1 in 0..=3i64 {
                for m2 in 0..=3i64 {
                    if l.label == SeriesLabel::S4 && m1 == 0 {
                        continue; // the flagged divergent corner
                    }
                    let desc = term_descriptor(
                        &l.candidate,
                        &series,
                        n_dim,
                        &[(outer, m1 as u64), (inner, m2 as u64)],
                    )
                    .unwrap_or_else(|e| {
                        panic!("{} at N={n_dim}, ({m1},{m2}): {e}", l.label)
                    });
                    let (coeff, a_exp, x_exp) = printed_summand(l.label, n_dim, m1, m2);
                    if desc.is_zero {
                        assert!(
                            coeff.is_zero(),
                            "{} at N={n_dim}, ({m1},{m2}): engine zero, printed {coeff}",
                            l.label
                        );
                        continue;
                    }
                    assert_eq!(
                        desc.coeff, coeff,
                        "{} coefficient at N={n_dim}, ({m1},{m2})",
                        l.label
                    );
                    assert_eq!(desc.alpha_exponent, a_exp, "{} alpha exp", l.label);
                    assert_eq!(desc.x_exponent, x_exp, "{} X exp", l.label);
                }
            }
        }
    }
}

#[test]
fn s2_first_term_value() {
    // Leading S2 summand at N = 3: N X Gamma(4)/Gamma(5) = 3/4 at X = 1.
    let series = debye_bracket_series();
    let (labeled, _) = classify_debye_candidates(&series).unwrap();
    let s2 = labeled.iter().find(|l| l.label == SeriesLabel::S2).unwrap();
    let d = term_descriptor(&s2.candidate, &series, 3, &[(N2, 0), (N3, 0)]).unwrap();
    assert_eq!(d.coeff, BigRational::new(BigInt::from(3), BigInt::from(4)));
    assert_eq!(d.x_exponent, Rational64::one());
    assert_eq!(d.alpha_exponent, Rational64::from_integer(0));
}

#[test]
fn s3_leading_term_is_large_x_row() {
    // S3 at (m1, m2) = (0, 0): N Gamma(N+1) X^-N.
    let series = debye_bracket_series();
    let (labeled, _) = classify_debye_candidates(&series).unwrap();
    let s3 = labeled.iter().find(|l| l.label == SeriesLabel::S3).unwrap();
    let d = term_descriptor(&s3.candidate, &series, 3, &[(N2, 0), (N4, 0)]).unwrap();
    assert_eq!(d.coeff, BigRational::from_integer(BigInt::from(18)));
    assert_eq!(d.x_exponent, Rational64::from_integer(-3));
}

#[test]
fn summed_candidates_match_oracle() {
    let series = debye_bracket_series();
    let (labeled, _) = classify_debye_candidates(&series).unwrap();
    let by_label = |lab: SeriesLabel| {
        labeled.iter().find(|l| l.label == lab).unwrap().candidate.clone()
    };

    // S2 inside its domain.
    let s2 = by_label(SeriesLabel::S2);
    let e2 = evaluate_candidate(&s2, &series, 3, 0.5f64, 1.0, 2000, 1e-11).unwrap();
    let o2 = debye_oracle(&DebyeParams::new(3, 0.5, 1.0).unwrap(), 1e-12).unwrap();
    let rel2 = (e2.value - o2.value).abs() / o2.value.abs();
    assert!(rel2 < 1e-8, "alpha-ascending sum vs oracle: rel {rel2:e}");

    // S1 inside its domain.
    let s1 = by_label(SeriesLabel::S1);
    let e1 = evaluate_candidate(&s1, &series, 3, 20.0f64, 1.0, 2000, 1e-11).unwrap();
    let o1 = debye_oracle(&DebyeParams::new(3, 20.0, 1.0).unwrap(), 1e-12).unwrap();
    let rel1 = (e1.value - o1.value).abs() / o1.value.abs();
    assert!(rel1 < 1e-8, "alpha-descending sum vs oracle: rel {rel1:e}");

    // S3 naturally truncates to the large-X row.
    let s3 = by_label(SeriesLabel::S3);
    let e3 = evaluate_candidate(&s3, &series, 3, 1.0f64, 30.0, 4000, 1e-11).unwrap();
    let a3 = debye_large_x(3, 30.0f64).unwrap();
    let rel3 = (e3.value - a3.value).abs() / a3.value.abs();
    assert!(rel3 < 1e-10, "descending-X sum vs asymptotic row: rel {rel3:e}");
}

#[test]
fn s4_refuses_evaluation() {
    let series = debye_bracket_series();
    let (labeled, _) = classify_debye_candidates(&series).unwrap();
    let s4 = labeled.iter().find(|l| l.label == SeriesLabel::S4).unwrap();
    assert!(matches!(s4.candidate.validity, Validity::Divergent { .. }));
    assert!(evaluate_candidate(&s4.candidate, &series, 3, 20.0f64, 1.0, 100, 1e-8).is_err());
}
