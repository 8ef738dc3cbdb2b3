//! Direct search for a conjugator when `[n, [n, n]] = 0`.
//!
//! For `y ∈ n` and class at most two,
//! `exp(ad y) x = x + [y, x] + ½[y, [y, x_l]]` exactly, and the Levi part is
//! untouched. So `H` lies in a reductive subgroup iff the nilradical part
//!
//! `G(y) = x_n + [y, x_l] + [y, x_n] + ½[y, [y, x_l]]`
//!
//! has a zero in `n`. Modulo `[n, n]` only `x_n + [y, x_l]` survives, which is
//! linear in `y`; on its solution set `y0 + span(Y_j)` every `[Y_j, x_l]` lies
//! in `[n, n]`, so the quadratic terms die and the remaining system is linear
//! too. Both layers are solved by exact elimination, so every `y ∈ n` is
//! accounted for.

use exact_linalg::{kernel, solve, Matrix, Rational};
use lie_core::{
    decompose, derived_subalgebra, is_nilpotent_element, nilpotency_class, validate_algebra,
    validate_levi, Element, LeviData, LieAlgebra,
};
use thiserror::Error;

use crate::VerdictKind;

/// Largest algebra dimension the oracle accepts.
pub const ORACLE_MAX_DIM: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle needs nilradical class at most 2, found {0}")]
    ClassTooHigh(usize),
    #[error("oracle handles dimension at most {ORACLE_MAX_DIM}, found {0}")]
    DimensionOverBudget(usize),
    #[error("quadratic terms survived the linear layer; nilradical class is not 2")]
    NonlinearResidual,
    #[error("invalid input: {0}")]
    Invalid(String),
}

/// Decides affinity by searching all `y ∈ n` with `exp(ad y) x ∈ l`.
pub fn oracle_decide_class2(
    g: &LieAlgebra,
    ld: &LeviData,
    x: &Element,
) -> Result<VerdictKind, OracleError> {
    let invalid = |e: &dyn std::fmt::Display| OracleError::Invalid(e.to_string());
    if g.dim() > ORACLE_MAX_DIM {
        return Err(OracleError::DimensionOverBudget(g.dim()));
    }
    validate_algebra(g).map_err(|e| invalid(&e))?;
    validate_levi(g, ld).map_err(|e| invalid(&e))?;
    if x.dim() != g.dim() || x.is_zero() || !is_nilpotent_element(g, ld, x) {
        return Err(OracleError::Invalid("element must be nonzero and nilpotent".into()));
    }
    let n = ld.nilradical();
    let class = nilpotency_class(g, n).ok_or_else(|| OracleError::Invalid("nilradical".into()))?;
    if class > 2 {
        return Err(OracleError::ClassTooHigh(class));
    }

    let dim = g.dim();
    let (x_l, x_n) = decompose(ld, x).map_err(|e| invalid(&e))?;
    let br = |a: &Element, b: &Element| g.bracket(a, b).expect("dimensions checked");
    let n_basis: Vec<Element> = n.basis_vectors().into_iter().map(Element::new).collect();
    if n_basis.is_empty() {
        return Ok(if x_n.is_zero() { VerdictKind::NotAffine } else { VerdictKind::Affine });
    }

    // Layer 1: P1 (x_n + [y, x_l]) = 0 with y = Σ t_i N_i, where the rows of
    // P1 span the functionals vanishing on [n, n].
    let derived = derived_subalgebra(g, n).map_err(|e| invalid(&e))?;
    let p1 = rows(kernel(derived.basis()).basis_vectors(), dim);
    let c = cols(n_basis.iter().map(|ni| br(ni, &x_l).into_coords()).collect(), dim);
    let rhs = p1.mul_vec(&neg(&x_n));
    let Some(t0) = solve(&(&p1 * &c), &rhs).map_err(|e| invalid(&e))? else {
        return Ok(VerdictKind::Affine);
    };
    let combine = |t: &[Rational]| {
        n_basis
            .iter()
            .zip(t)
            .fold(Element::zero(dim), |acc, (ni, ti)| &acc + &ni.scale(ti))
    };
    let y0 = combine(&t0);
    let ys: Vec<Element> = kernel(&(&p1 * &c))
        .basis_vectors()
        .iter()
        .map(|t| combine(t))
        .collect();

    // Layer 2: G(y0 + Σ s_j Y_j), with B(a, b) = ½[a, [b, x_l]].
    let half = Rational::new(1, 2);
    let b = |a: &Element, b: &Element| br(a, &br(b, &x_l)).scale(&half);
    for (i, yi) in ys.iter().enumerate() {
        for yj in &ys[i..] {
            if !(&b(yi, yj) + &b(yj, yi)).is_zero() {
                return Err(OracleError::NonlinearResidual);
            }
        }
    }
    let constant = [&x_n, &br(&y0, &x_l), &br(&y0, &x_n), &b(&y0, &y0)]
        .into_iter()
        .fold(Element::zero(dim), |acc, t| &acc + t);
    let linear: Vec<Vec<Rational>> = ys
        .iter()
        .map(|yj| {
            [&br(yj, &x_l), &br(yj, &x_n), &b(&y0, yj), &b(yj, &y0)]
                .into_iter()
                .fold(Element::zero(dim), |acc, t| &acc + t)
                .into_coords()
        })
        .collect();
    let solvable = if linear.is_empty() {
        constant.is_zero()
    } else {
        solve(&cols(linear, dim), &neg(&constant)).map_err(|e| invalid(&e))?.is_some()
    };
    Ok(if solvable { VerdictKind::NotAffine } else { VerdictKind::Affine })
}

fn neg(e: &Element) -> Vec<Rational> {
    (-e).into_coords()
}

fn rows(vs: Vec<Vec<Rational>>, width: usize) -> Matrix {
    Matrix::from_rows(vs, width).expect("row length")
}

fn cols(vs: Vec<Vec<Rational>>, height: usize) -> Matrix {
    Matrix::from_cols(&vs, height).expect("column length")
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_linalg::q;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn sl2_v1() -> (LieAlgebra, LeviData) {
        let g = LieAlgebra::new(
            names(&["e", "h", "f", "u0", "u1"]),
            [
                ((0, 1), vec![(0, q(-2, 1))]),
                ((0, 2), vec![(1, q(1, 1))]),
                ((1, 2), vec![(2, q(-2, 1))]),
                ((0, 4), vec![(3, q(1, 1))]),
                ((1, 3), vec![(3, q(1, 1))]),
                ((1, 4), vec![(4, q(-1, 1))]),
                ((2, 3), vec![(4, q(1, 1))]),
            ],
        )
        .unwrap();
        (g, LeviData::from_indices(5, &[0, 1, 2], &[3, 4]).unwrap())
    }

    fn heisenberg() -> (LieAlgebra, LeviData) {
        let g = LieAlgebra::new(names(&["p", "q", "z"]), [((0, 1), vec![(2, q(1, 1))])]).unwrap();
        (g, LeviData::from_indices(3, &[], &[0, 1, 2]).unwrap())
    }

    #[test]
    fn oracle_examples() {
        let (g, ld) = sl2_v1();
        let kind = |x: &[i64]| oracle_decide_class2(&g, &ld, &Element::from_i64(x)).unwrap();
        assert_eq!(kind(&[1, 0, 0, 1, 0]), VerdictKind::NotAffine);
        assert_eq!(kind(&[1, 0, 0, 0, 1]), VerdictKind::Affine);
        assert_eq!(kind(&[1, 0, 0, 0, 0]), VerdictKind::NotAffine);

        let (g, ld) = heisenberg();
        for x in [[0, 0, 1], [1, 0, 0], [1, 2, 3]] {
            assert_eq!(
                oracle_decide_class2(&g, &ld, &Element::from_i64(&x)).unwrap(),
                VerdictKind::Affine
            );
        }
    }

    #[test]
    fn oracle_rejects_out_of_scope_inputs() {
        // filiform: [x, y1] = y2, [x, y2] = y3 has class 3
        let g = LieAlgebra::new(
            names(&["x", "y1", "y2", "y3"]),
            [((0, 1), vec![(2, q(1, 1))]), ((0, 2), vec![(3, q(1, 1))])],
        )
        .unwrap();
        let ld = LeviData::from_indices(4, &[], &[0, 1, 2, 3]).unwrap();
        assert_eq!(
            oracle_decide_class2(&g, &ld, &Element::basis(4, 0)),
            Err(OracleError::ClassTooHigh(3))
        );

        let big = LieAlgebra::abelian((0..9).map(|i| format!("a{i}")).collect()).unwrap();
        let ld = LeviData::from_indices(9, &[], &(0..9).collect::<Vec<_>>()).unwrap();
        assert_eq!(
            oracle_decide_class2(&big, &ld, &Element::basis(9, 0)),
            Err(OracleError::DimensionOverBudget(9))
        );

        let (g, ld) = heisenberg();
        assert!(matches!(
            oracle_decide_class2(&g, &ld, &Element::zero(3)),
            Err(OracleError::Invalid(_))
        ));
    }
}
