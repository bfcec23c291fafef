//! Cross-representation consistency: every route to D_N(alpha, X) must land
//! on the same value inside its convergence domain.

use debye::{
    debye_bernoulli_series, debye_dubinov_polylog, debye_new_polylog, debye_oracle,
    debye_series_s1, debye_series_s2, DebyeParams,
};

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

#[test]
fn cross_representation_agreement_grid() {
    for &n in &[1u32, 2, 3, 5] {
        for &alpha in &[0.3f64, 0.7, 1.0] {
            for &x in &[0.2f64, 1.0, 3.0, 6.0] {
                let p = DebyeParams::new(n, alpha, x).unwrap();
                let oracle = debye_oracle(&p, 1e-12).unwrap().value;
                let newp = debye_new_polylog(&p).unwrap().value;
                let s2 = debye_series_s2(&p, 4000).unwrap().value;
                assert!(
                    rel(newp, oracle) < 1e-9,
                    "new polylog vs oracle at N={n}, alpha={alpha}, X={x}: {:e}",
                    rel(newp, oracle)
                );
                assert!(
                    rel(s2, oracle) < 1e-9,
                    "gamma resummation vs oracle at N={n}, alpha={alpha}, X={x}: {:e}",
                    rel(s2, oracle)
                );
                assert!(rel(newp, s2) < 1e-9);
                if alpha == 1.0 {
                    let b = debye_bernoulli_series(n, x, 1e-12).unwrap().value;
                    assert!(
                        rel(b, oracle) < 1e-8,
                        "Bernoulli series vs oracle at N={n}, X={x}: {:e}",
                        rel(b, oracle)
                    );
                }
            }
        }
    }
}

#[test]
fn descending_alpha_family_agreement() {
    for &x in &[0.5f64, 1.0, 2.0] {
        for &factor in &[1.5f64, 10.0] {
            for &n in &[1u32, 3] {
                let alpha = factor * x.exp();
                let p = DebyeParams::new(n, alpha, x).unwrap();
                let oracle = debye_oracle(&p, 1e-12).unwrap().value;
                let dub = debye_dubinov_polylog(&p, false).unwrap().value;
                let s1 = debye_series_s1(&p, 2000).unwrap().value;
                assert!(
                    rel(dub, oracle) < 1e-8,
                    "closed form vs oracle at N={n}, alpha={alpha}, X={x}: {:e}",
                    rel(dub, oracle)
                );
                assert!(
                    rel(s1, oracle) < 1e-8,
                    "descending series vs oracle at N={n}, alpha={alpha}, X={x}: {:e}",
                    rel(s1, oracle)
                );
            }
        }
    }
}

#[test]
fn limit_normalization_at_small_x() {
    for n in 1..=3u32 {
        let p = DebyeParams::new(n, 1.0f64, 1e-5).unwrap();
        let v = debye_oracle(&p, 1e-12).unwrap().value;
        assert!((v - 1.0).abs() < 1e-4, "N = {n}: {v}");
    }
}

#[test]
fn oracle_monotone_decreasing_in_x() {
    for &n in &[1u32, 3] {
        let mut prev = f64::INFINITY;
        let mut x = 0.1f64;
        while x <= 10.0 {
            let v = debye_oracle(&DebyeParams::new(n, 1.0, x).unwrap(), 1e-12)
                .unwrap()
                .value;
            assert!(v < prev, "N = {n}, X = {x}: {v} !< {prev}");
            prev = v;
            x += 0.3;
        }
    }
}

#[test]
fn continuation_equals_new_form_below_one() {
    for &alpha in &[0.3f64, 0.7, 1.0] {
        for &x in &[0.2f64, 1.0, 3.0, 6.0] {
            for &n in &[1u32, 3] {
                let p = DebyeParams::new(n, alpha, x).unwrap();
                let cont = debye_dubinov_polylog(&p, true).unwrap().value;
                let newp = debye_new_polylog(&p).unwrap().value;
                assert!(
                    rel(cont, newp) < 1e-8,
                    "N={n}, alpha={alpha}, X={x}: {:e}",
                    rel(cont, newp)
                );
            }
        }
    }
}

#[test]
fn concurrent_evaluation_is_safe() {
    // Pure functions plus an initialize-once Bernoulli table: hammer the
    // same grid from several threads and require identical values.
    let reference = debye_new_polylog(&DebyeParams::new(3, 1.0f64, 1.0).unwrap())
        .unwrap()
        .value;
    let handles: Vec<_> = (0..8)
        .map(|_| {
            std::thread::spawn(move || {
                let mut acc = 0.0f64;
                for i in 0..20 {
                    let x = 0.5 + 0.1 * i as f64;
                    let p = DebyeParams::new(3, 1.0f64, x).unwrap();
                    acc += debye_new_polylog(&p).unwrap().value;
                    acc += debye_series_s2(&p, 2000).unwrap().value;
                }
                let v = debye_new_polylog(&DebyeParams::new(3, 1.0f64, 1.0).unwrap())
                    .unwrap()
                    .value;
                (acc, v)
            })
        })
        .collect();
    let results: Vec<(f64, f64)> = handles.into_iter().map(|h| h.join().unwrap()).collect();
    for (acc, v) in &results {
        assert_eq!(*v, reference, "thread saw a different value");
        assert_eq!(*acc, results[0].0, "grid sums must be bit-identical");
    }
}

#[test]
fn single_precision_instantiation() {
    // The kernels are generic over the scalar; f32 gets f32-grade accuracy.
    use debye::special::{gamma, polylog};
    let g: f32 = gamma(5.0f32).unwrap();
    assert!((g - 24.0).abs() < 1e-4);
    let li: f32 = polylog(2, 0.3f32).unwrap();
    assert!((li - 0.326_129_5).abs() < 1e-5);
    let p32 = DebyeParams::new(3, 1.0f32, 1.0f32).unwrap();
    let o32 = debye_oracle(&p32, 1e-6f32).unwrap();
    assert!((o32.value - 0.674_415_5).abs() < 1e-4, "{}", o32.value);
    let n32 = debye_new_polylog(&p32).unwrap();
    assert!((n32.value - o32.value).abs() < 1e-4);
}

#[test]
fn evaluation_metadata_is_sane() {
    let p = DebyeParams::new(3, 0.5f64, 1.0).unwrap();
    for eval in [
        debye_oracle(&p, 1e-10).unwrap(),
        debye_new_polylog(&p).unwrap(),
        debye_series_s2(&p, 2000).unwrap(),
    ] {
        assert!(eval.err_estimate >= 0.0);
        assert!(eval.terms_used > 0);
        assert!(eval.value.is_finite());
    }
}
