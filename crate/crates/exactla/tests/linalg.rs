use exactla::{q, BigRational, LaurentPoly, LinAlgError, RationalMatrix};
use num_traits::Zero;
use proptest::prelude::*;

/// Independent dense oracle: plain Gaussian elimination with rational pivots.
#[allow(clippy::needless_range_loop)]
fn naive_rank(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut rank = 0;
    for c in 0..cols {
        if let Some(p) = (rank..rows).find(|&i| !a[i][c].is_zero()) {
            a.swap(rank, p);
            for i in rank + 1..rows {
                let f = &a[i][c] / &a[rank][c];
                for j in c..cols {
                    let t = &f * &a[rank][j];
                    a[i][j] -= t;
                }
            }
            rank += 1;
        }
    }
    rank
}

fn to_matrix(m: &[Vec<i64>]) -> RationalMatrix {
    RationalMatrix::from_rows(&m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect::<Vec<_>>())
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..7, 1usize..7).prop_flat_map(|(r, c)| proptest::collection::vec(proptest::collection::vec(-3i64..4, c), r))
}

#[test]
fn identity_has_full_rank() {
    for n in 0..9 {
        assert_eq!(RationalMatrix::identity(n).rank(), n);
    }
}

#[test]
fn dimension_mismatch_is_reported() {
    let a = RationalMatrix::zeros(2, 3);
    let b = RationalMatrix::zeros(4, 3);
    assert!(matches!(a.checked_mul(&b), Err(LinAlgError::DimensionMismatch { .. })));
    assert!(a.colspace_equal(&b).is_err());
    assert!(a.subspace_sum_rank(&b).is_err());
}

#[test]
fn colspace_of_scaled_and_permuted_columns() {
    let a = to_matrix(&[vec![1, 0, 1], vec![0, 1, 1], vec![0, 0, 0]]);
    let b = to_matrix(&[vec![2, 3], vec![-2, 3], vec![0, 0]]);
    assert!(a.colspace_equal(&b).unwrap());
    let c = to_matrix(&[vec![1], vec![0], vec![1]]);
    assert!(!a.colspace_equal(&c).unwrap());
    assert_eq!(a.subspace_sum_rank(&c).unwrap(), 3);
}

#[test]
fn laurent_basics() {
    let t = LaurentPoly::t_pow(1);
    let f = &(&LaurentPoly::one() + &t) * &t; // t + t^2
    assert_eq!(f.bar(), &LaurentPoly::t_pow(-1) + &LaurentPoly::t_pow(-2));
    assert_eq!(f.bar().bar(), f);
    assert_eq!(LaurentPoly::t_pow(5).bar(), LaurentPoly::t_pow(-5));
    assert_eq!(f.eval_at_1(), 2);
    let sym = &LaurentPoly::t_pow(-1) + &LaurentPoly::t_pow(1);
    assert!(sym.is_bar_invariant());
    assert_eq!(format!("{}", &f - &f), "0");
}

#[test]
fn laurent_json_uses_string_exponents() {
    let p = &LaurentPoly::monomial(-2, 3) + &LaurentPoly::one();
    let s = serde_json::to_string(&p).unwrap();
    assert_eq!(s, r#"{"-2":3,"0":1}"#);
    let back: LaurentPoly = serde_json::from_str(&s).unwrap();
    assert_eq!(back, p);
}

proptest! {
    #[test]
    fn rank_matches_dense_oracle(m in small_matrix()) {
        prop_assert_eq!(to_matrix(&m).rank(), naive_rank(&m));
    }

    #[test]
    fn rank_nullity(m in small_matrix()) {
        let a = to_matrix(&m);
        let ker = a.kernel_basis();
        prop_assert_eq!(ker.len() + a.rank(), a.ncols());
        for v in &ker {
            prop_assert!(a.apply(v).unwrap().iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn rank_invariant_under_transpose_and_permutation(m in small_matrix(), seed in 0usize..100) {
        let a = to_matrix(&m);
        prop_assert_eq!(a.rank(), a.transpose().rank());
        let mut rows = m.clone();
        let n = rows.len();
        rows.rotate_left(seed % n);
        prop_assert_eq!(to_matrix(&rows).rank(), a.rank());
    }

    #[test]
    fn rank_invariant_under_unitriangular_multiplication(m in small_matrix(), diag in proptest::collection::vec(1i64..4, 7), upper in proptest::collection::vec(-2i64..3, 49)) {
        let a = to_matrix(&m);
        let n = a.nrows();
        let mut t = RationalMatrix::zeros(n, n);
        for i in 0..n {
            t.set(i, i, q(diag[i]));
            for j in i + 1..n {
                t.set(i, j, q(upper[i * 7 + j]));
            }
        }
        prop_assert_eq!(t.checked_mul(&a).unwrap().rank(), a.rank());
    }

    #[test]
    fn laurent_ring_laws(a in proptest::collection::btree_map(-4i64..5, -3i64..4, 0..4), b in proptest::collection::btree_map(-4i64..5, -3i64..4, 0..4)) {
        let mk = |m: &std::collections::BTreeMap<i64, i64>| m.iter().map(|(e, c)| LaurentPoly::monomial(*e, *c)).sum::<LaurentPoly>();
        let (f, g) = (mk(&a), mk(&b));
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!((&f * &g).bar(), &f.bar() * &g.bar());
        prop_assert_eq!((&f + &g).eval_at_1(), f.eval_at_1() + g.eval_at_1());
        prop_assert_eq!(&(&f + &g) - &g, f);
    }
}
