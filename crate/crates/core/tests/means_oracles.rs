use pdmeans_core::densela::{multiply, multiply_chain, pd_power, random_orthogonal, random_pd_with, seeded_rng};
use pdmeans_core::means::{
    arithmetic_path, cross_term, geometric_mean, geometric_mean_unitary_factor, hermitian_part, log_euclidean,
    log_euclidean_multi, power_mean, power_mean_multi, power_sum_root, sandwich_mean, WeightVector,
};
use pdmeans_core::{GenMatrix, PdMatrix};
use proptest::prelude::*;
use rand::Rng;

const T_VALUES: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
const P_GRID: [f64; 11] = [-4.0, -2.0, -1.0, -0.5, -0.1, 0.0, 0.1, 0.5, 1.0, 2.0, 4.0];

fn rel_diff(x: &GenMatrix, y: &GenMatrix) -> f64 {
    x.max_diff(y) / (1.0 + x.max_abs().max(y.max_abs()))
}

fn assert_diag(m: &GenMatrix, expected: &[f64], what: &str) {
    let oracle = GenMatrix::from_diag(expected);
    let err = m.max_diff(&oracle);
    assert!(err <= 1e-12, "{what}: max entry error {err:e}\n{m:?}\nvs {expected:?}");
}

fn scalar_power(a: f64, b: f64, t: f64, p: f64) -> f64 {
    if p == 0.0 {
        a.powf(1.0 - t) * b.powf(t)
    } else {
        ((1.0 - t) * a.powf(p) + t * b.powf(p)).powf(1.0 / p)
    }
}

#[test]
fn commuting_inputs_match_scalar_formulas() {
    let mut rng = seeded_rng(314);
    for _ in 0..50 {
        let n = rng.random_range(2..=6);
        let da: Vec<f64> = (0..n).map(|_| rng.random_range(0.2..5.0)).collect();
        let db: Vec<f64> = (0..n).map(|_| rng.random_range(0.2..5.0)).collect();
        let (a, b) = (PdMatrix::from_diag(&da).unwrap(), PdMatrix::from_diag(&db).unwrap());
        let zip = |f: &dyn Fn(f64, f64) -> f64| -> Vec<f64> { da.iter().zip(&db).map(|(x, y)| f(*x, *y)).collect() };
        for t in T_VALUES {
            let geo = zip(&|x, y| x.powf(1.0 - t) * y.powf(t));
            assert_diag(&geometric_mean(&a, &b, t).unwrap(), &geo, "geometric");
            assert_diag(&log_euclidean(&a, &b, t).unwrap(), &geo, "log-Euclidean");
            assert_diag(&cross_term(&a, &b, t).unwrap(), &geo, "cross term");
            assert_diag(&hermitian_part(&cross_term(&a, &b, t).unwrap()), &geo, "Hermitian part");
            assert_diag(
                &arithmetic_path(&a, &b, t).unwrap(),
                &zip(&|x, y| (1.0 - t) * x + t * y),
                "arithmetic",
            );
            for p in P_GRID {
                let f = zip(&|x, y| scalar_power(x, y, t, p));
                assert_diag(&power_mean(&a, &b, t, p).unwrap(), &f, "power mean");
                if p > 0.0 {
                    assert_diag(&sandwich_mean(&a, &b, t, p).unwrap(), &geo, "sandwich");
                }
            }
        }
    }
}

#[test]
fn commuting_multi_matrix_means_match_scalar_formulas() {
    let mut rng = seeded_rng(99);
    for m in 2..=4 {
        let n = 4;
        let diags: Vec<Vec<f64>> = (0..m)
            .map(|_| (0..n).map(|_| rng.random_range(0.2..5.0)).collect())
            .collect();
        let mats: Vec<PdMatrix> = diags.iter().map(|d| PdMatrix::from_diag(d).unwrap()).collect();
        let refs: Vec<&PdMatrix> = mats.iter().collect();
        let raw: Vec<f64> = (0..m).map(|_| rng.random_range(0.1..1.0)).collect();
        let total: f64 = raw.iter().sum();
        let w = WeightVector::new(raw.iter().map(|x| x / total).collect()).unwrap();
        let ws = w.as_slice();
        for p in P_GRID {
            let expected: Vec<f64> = (0..n)
                .map(|j| {
                    if p == 0.0 {
                        (0..m).map(|i| diags[i][j].powf(ws[i])).product()
                    } else {
                        (0..m).map(|i| ws[i] * diags[i][j].powf(p)).sum::<f64>().powf(1.0 / p)
                    }
                })
                .collect();
            assert_diag(&power_mean_multi(&refs, &w, p).unwrap(), &expected, "multi power mean");
            if p != 0.0 {
                let ones = vec![1.0; m];
                let unnorm: Vec<f64> = (0..n)
                    .map(|j| (0..m).map(|i| diags[i][j].powf(p)).sum::<f64>().powf(1.0 / p))
                    .collect();
                // Not a mean: entries grow like m^{1/p}, so the bound is relative.
                let got = power_sum_root(&refs, &ones, p).unwrap();
                assert!(rel_diff(&got, &GenMatrix::from_diag(&unnorm)) <= 1e-13);
            }
        }
        let le: Vec<f64> = (0..n)
            .map(|j| (0..m).map(|i| diags[i][j].powf(ws[i])).product())
            .collect();
        assert_diag(&log_euclidean_multi(&refs, &w).unwrap(), &le, "multi log-Euclidean");
    }
}

#[test]
fn commuting_rotated_inputs_match_rotated_oracle() {
    let mut rng = seeded_rng(4);
    for _ in 0..20 {
        let q = random_orthogonal(4, &mut rng);
        let da: Vec<f64> = (0..4).map(|_| rng.random_range(0.2..5.0)).collect();
        let db: Vec<f64> = (0..4).map(|_| rng.random_range(0.2..5.0)).collect();
        let a = PdMatrix::from_eigen(q.clone(), da.clone()).unwrap();
        let b = PdMatrix::from_eigen(q.clone(), db.clone()).unwrap();
        let rotate = |d: Vec<f64>| multiply_chain(&[&q, &GenMatrix::from_diag(&d), &q.transpose()]).unwrap();
        for t in T_VALUES {
            let geo = rotate(da.iter().zip(&db).map(|(x, y)| x.powf(1.0 - t) * y.powf(t)).collect());
            assert!(rel_diff(&geometric_mean(&a, &b, t).unwrap(), &geo) <= 1e-12);
            assert!(rel_diff(&log_euclidean(&a, &b, t).unwrap(), &geo) <= 1e-12);
            for p in [-2.0, 0.5, 2.0] {
                let f = rotate(da.iter().zip(&db).map(|(x, y)| scalar_power(*x, *y, t, p)).collect());
                assert!(rel_diff(&power_mean(&a, &b, t, p).unwrap(), &f) <= 1e-12);
            }
        }
    }
}

fn random_pair(rng: &mut impl Rng, n: usize, c: f64) -> (PdMatrix, PdMatrix) {
    (random_pd_with(n, c, rng).unwrap(), random_pd_with(n, c, rng).unwrap())
}

#[test]
fn geometric_mean_solves_riccati_equation() {
    let mut rng = seeded_rng(12);
    for _ in 0..200 {
        let n = rng.random_range(2..=6);
        let (a, b) = random_pair(&mut rng, n, 1.5);
        let g = geometric_mean(&a, &b, 0.5).unwrap();
        let ainv = pd_power(&a, -1.0).unwrap();
        let lhs = multiply_chain(&[&g, &ainv, &g]).unwrap();
        assert!(rel_diff(&lhs, &b) <= 1e-9, "{}", rel_diff(&lhs, &b));
    }
}

#[test]
fn geometric_mean_symmetry_in_t() {
    let mut rng = seeded_rng(21);
    for _ in 0..200 {
        let n = rng.random_range(2..=6);
        let (a, b) = random_pair(&mut rng, n, 1.5);
        for t in T_VALUES {
            let x = geometric_mean(&a, &b, t).unwrap();
            let y = geometric_mean(&b, &a, 1.0 - t).unwrap();
            assert!(rel_diff(&x, &y) <= 1e-10, "t = {t}: {}", rel_diff(&x, &y));
        }
    }
}

#[test]
fn determinant_identity_via_lu() {
    let mut rng = seeded_rng(500);
    for _ in 0..500 {
        let n = rng.random_range(2..=6);
        let (a, b) = random_pair(&mut rng, n, 1.0);
        let t: f64 = rng.random();
        let g = geometric_mean(&a, &b, t).unwrap();
        let expected = a.determinant().powf(1.0 - t) * b.determinant().powf(t);
        let got = g.determinant();
        assert!((got - expected).abs() <= 1e-8 * expected, "{got} vs {expected}");
    }
}

#[test]
fn two_by_two_closed_form() {
    // For 2×2 matrices with det 1, A#B = (A + B) / sqrt(det(A + B)).
    let mut rng = seeded_rng(8);
    for _ in 0..100 {
        let (a, b) = random_pair(&mut rng, 2, 1.5);
        let (sa, sb) = (a.determinant().sqrt(), b.determinant().sqrt());
        let sum = a.scale(1.0 / sa).add(&b.scale(1.0 / sb)).unwrap();
        let oracle = sum.scale((sa * sb).sqrt() / sum.determinant().sqrt());
        let g = geometric_mean(&a, &b, 0.5).unwrap();
        assert!(rel_diff(&g, &oracle) <= 1e-12, "{}", rel_diff(&g, &oracle));
    }
}

#[test]
fn unitary_factor_is_orthogonal() {
    let mut rng = seeded_rng(33);
    for _ in 0..50 {
        let (a, b) = random_pair(&mut rng, 4, 1.0);
        let u = geometric_mean_unitary_factor(&a, &b).unwrap();
        let utu = multiply(&u.transpose(), &u).unwrap();
        assert!(utu.max_diff(&GenMatrix::identity(4)) <= 1e-9);
    }
}

#[test]
fn power_mean_is_continuous_at_zero() {
    let mut rng = seeded_rng(40);
    for _ in 0..100 {
        let n = rng.random_range(2..=6);
        let (a, b) = random_pair(&mut rng, n, 1.0);
        for t in T_VALUES {
            let l = log_euclidean(&a, &b, t).unwrap();
            for p in [-1e-4, 1e-4] {
                let f = power_mean(&a, &b, t, p).unwrap();
                assert!(f.max_diff(&l) <= 1e-3 * (1.0 + l.max_abs()));
            }
        }
    }
}

#[test]
fn equal_inputs_are_fixed_points() {
    let mut rng = seeded_rng(6);
    let a = random_pd_with(5, 3.0, &mut rng).unwrap();
    for t in T_VALUES {
        assert_eq!(geometric_mean(&a, &a, t).unwrap().as_gen(), a.as_gen());
        assert_eq!(log_euclidean(&a, &a, t).unwrap().as_gen(), a.as_gen());
        for p in P_GRID {
            assert_eq!(power_mean(&a, &a, t, p).unwrap().as_gen(), a.as_gen());
        }
    }
}

#[test]
fn parameter_errors() {
    let a = PdMatrix::identity(2);
    let b = PdMatrix::identity(3);
    assert!(geometric_mean(&a, &b, 0.5).is_err());
    assert!(geometric_mean(&a, &a, 1.5).is_err());
    assert!(power_mean(&a, &a, 0.5, f64::NAN).is_err());
    assert!(sandwich_mean(&a, &a, 0.5, -1.0).is_err());
    assert!(WeightVector::new(vec![0.5, 0.6]).is_err());
    assert!(WeightVector::new(vec![1.5, -0.5]).is_err());
}

fn pair_strategy() -> impl Strategy<Value = (u64, usize, f64, f64)> {
    (any::<u64>(), 2usize..=5, 0.0..2.0f64, 0.0..=1.0f64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn geometric_mean_is_congruence_invariant((seed, n, c, t) in pair_strategy()) {
        let mut rng = seeded_rng(seed);
        let (a, b) = random_pair(&mut rng, n, c);
        // Well-conditioned invertible X.
        let q = random_orthogonal(n, &mut rng);
        let d: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..2.0)).collect();
        let x = multiply(&q, &GenMatrix::from_diag(&d)).unwrap();
        let congr = |m: &GenMatrix| PdMatrix::from_gen(
            multiply_chain(&[&x, m, &x.transpose()]).unwrap().symmetric_part()).unwrap();
        let lhs = multiply_chain(&[&x, &geometric_mean(&a, &b, t).unwrap(), &x.transpose()]).unwrap();
        let rhs = geometric_mean(&congr(&a), &congr(&b), t).unwrap();
        prop_assert!(rel_diff(&lhs, &rhs) <= 1e-9);
    }

    #[test]
    fn power_mean_is_homogeneous((seed, n, c, t) in pair_strategy(), p in -3.0..3.0f64, s in 0.1..10.0f64) {
        let mut rng = seeded_rng(seed);
        let (a, b) = random_pair(&mut rng, n, c);
        let sa = PdMatrix::from_eigen(a.eigen().q.clone(), a.eigenvalues().iter().map(|v| s * v).collect()).unwrap();
        let sb = PdMatrix::from_eigen(b.eigen().q.clone(), b.eigenvalues().iter().map(|v| s * v).collect()).unwrap();
        let lhs = power_mean(&sa, &sb, t, p).unwrap();
        let rhs = power_mean(&a, &b, t, p).unwrap().scale(s);
        prop_assert!(rel_diff(&lhs, &rhs) <= 1e-10);
    }

    #[test]
    fn two_matrix_family_matches_pair_mean((seed, n, c, t) in pair_strategy(), p in -3.0..3.0f64) {
        let mut rng = seeded_rng(seed);
        let (a, b) = random_pair(&mut rng, n, c);
        let w = WeightVector::pair(t).unwrap();
        let multi = power_mean_multi(&[&a, &b], &w, p).unwrap();
        let pair = power_mean(&a, &b, t, p).unwrap();
        prop_assert!(rel_diff(&multi, &pair) <= 1e-12);
    }
}
