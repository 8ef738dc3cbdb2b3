use exact_linalg::{
    exp_nilpotent, image, kernel, minimal_polynomial, q, rref, solve, Matrix, Rational,
};
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| q(n, d))
}

fn matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = Matrix> {
    (0..=max_rows, 0..=max_cols).prop_flat_map(|(r, c)| {
        // bias towards zeros so rank-deficient matrices show up
        prop::collection::vec(prop_oneof![2 => Just(q(0, 1)), 3 => small_rational()], r * c)
            .prop_map(move |data| Matrix::from_vec(r, c, data).unwrap())
    })
}

fn square(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(small_rational(), n * n)
            .prop_map(move |d| Matrix::from_vec(n, n, d).unwrap())
    })
}

/// `P · U · P⁻¹` for strictly upper-triangular `U` and unit lower-triangular `P`.
fn nilpotent(max: usize) -> impl Strategy<Value = Matrix> {
    (1..=max).prop_flat_map(|n| {
        (
            prop::collection::vec(small_rational(), n * n),
            prop::collection::vec(-3i64..=3, n * n),
        )
            .prop_map(move |(u, p)| {
                let upper = Matrix::from_fn(n, n, |i, j| if j > i { u[i * n + j].clone() } else { q(0, 1) });
                let lower = Matrix::from_fn(n, n, |i, j| match i.cmp(&j) {
                    std::cmp::Ordering::Equal => q(1, 1),
                    std::cmp::Ordering::Greater => q(p[i * n + j], 1),
                    std::cmp::Ordering::Less => q(0, 1),
                });
                let inv = lower.inverse().unwrap();
                &(&lower * &upper) * &inv
            })
    })
}

/// Term-by-term exponential, independent of the library routine: sums
/// `a^i / i!` for `i ≤ n` using explicit powers and factorials.
fn exp_oracle(a: &Matrix) -> Matrix {
    let n = a.rows();
    let mut out = Matrix::zeros(n, n);
    let mut fact = 1i64;
    for i in 0..=n {
        if i > 0 {
            fact *= i as i64;
        }
        out = &out + &a.pow(i as u32).scale(&q(1, fact));
    }
    out
}

#[test]
fn exp_of_three_step_block_matches_oracle() {
    let a = Matrix::from_i64(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
    let expected = Matrix::from_vec(
        3,
        3,
        vec![q(1, 1), q(1, 1), q(1, 2), q(0, 1), q(1, 1), q(1, 1), q(0, 1), q(0, 1), q(1, 1)],
    )
    .unwrap();
    assert_eq!(exp_oracle(&a), expected);
    assert_eq!(exp_nilpotent(&a).unwrap(), expected);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rref_is_idempotent(m in matrix(5, 5)) {
        let once = rref(&m);
        let twice = rref(&once.matrix);
        prop_assert_eq!(&once.matrix, &twice.matrix);
        prop_assert_eq!(once.rank, twice.rank);
        prop_assert_eq!(once.pivots, twice.pivots);
    }

    #[test]
    fn rref_is_deterministic(m in matrix(4, 4)) {
        prop_assert_eq!(rref(&m), rref(&m.clone()));
    }

    #[test]
    fn solve_satisfies_consistent_systems(m in matrix(5, 5), x in prop::collection::vec(small_rational(), 5)) {
        let x = &x[..m.cols()];
        let b = m.mul_vec(x);
        let sol = solve(&m, &b).unwrap().expect("b is in the column space by construction");
        prop_assert_eq!(m.mul_vec(&sol), b);
    }

    #[test]
    fn solve_none_means_outside_image(m in matrix(4, 4), b in prop::collection::vec(small_rational(), 4)) {
        let b = &b[..m.rows()];
        let solvable = solve(&m, b).unwrap().is_some();
        prop_assert_eq!(solvable, image(&m).contains(b));
    }

    #[test]
    fn rank_nullity(m in matrix(6, 6)) {
        prop_assert_eq!(image(&m).dim() + kernel(&m).dim(), m.cols());
        prop_assert_eq!(image(&m).dim(), rref(&m).rank);
        for v in kernel(&m).basis_vectors() {
            prop_assert!(m.mul_vec(&v).iter().all(Rational::is_zero));
        }
    }

    #[test]
    fn exp_inverse(a in nilpotent(5)) {
        let e = exp_nilpotent(&a).unwrap();
        let e_neg = exp_nilpotent(&-&a).unwrap();
        prop_assert_eq!(&e * &e_neg, Matrix::identity(a.rows()));
        prop_assert!((&e - &Matrix::identity(a.rows())).is_nilpotent());
        prop_assert_eq!(e, exp_oracle(&a));
    }

    #[test]
    fn minimal_polynomial_annihilates(a in square(4)) {
        let p = minimal_polynomial(&a).unwrap();
        prop_assert!(p.is_monic());
        prop_assert!(p.eval_matrix(&a).is_zero());
        // no proper divisor of lower degree annihilates: check degree minimality
        // by confirming I, a, ..., a^(d-1) are independent
        let d = p.degree().unwrap();
        let powers: Vec<Vec<Rational>> = (0..d).map(|k| a.pow(k as u32).entries().to_vec()).collect();
        let stacked = Matrix::from_rows(powers, a.rows() * a.cols()).unwrap();
        prop_assert_eq!(rref(&stacked).rank, d);
    }
}
