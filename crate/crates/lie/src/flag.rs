//! The derived series of the nilradical and its successive quotients.

use exact_linalg::{solve, Matrix, Rational, Subspace};

use crate::{Element, LieAlgebra, LieError};

/// One term `n^(k)` of the derived series together with coset
/// representatives for `V_k = n^(k) / n^(k+1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagLevel {
    pub index: usize,
    /// `n^(k)`.
    pub sub: Subspace,
    /// `n^(k+1)`.
    pub next: Subspace,
    /// Representatives of a basis of `V_k`: the rows of the RREF basis of
    /// `n^(k)` whose pivot is not a pivot of `n^(k+1)`.
    pub quotient_basis: Vec<Element>,
    /// Columns are the representatives followed by the basis of `n^(k+1)`,
    /// a basis of `n^(k)` adapted to the quotient.
    adapted: Matrix,
}

impl FlagLevel {
    fn new(index: usize, sub: Subspace, next: Subspace) -> Self {
        let next_pivots = next.pivots();
        let quotient_basis: Vec<Element> = sub
            .pivots()
            .iter()
            .enumerate()
            .filter(|(_, p)| !next_pivots.contains(p))
            .map(|(row, _)| Element::new(sub.basis().row(row).to_vec()))
            .collect();
        let mut cols: Vec<Vec<Rational>> =
            quotient_basis.iter().map(|e| e.coords().to_vec()).collect();
        cols.extend(next.basis_vectors());
        let adapted = Matrix::from_cols(&cols, sub.ambient_dim()).expect("ambient dimension");
        FlagLevel {
            index,
            sub,
            next,
            quotient_basis,
            adapted,
        }
    }

    /// `dim V_k`.
    pub fn quotient_dim(&self) -> usize {
        self.quotient_basis.len()
    }

    /// Lifts quotient coordinates to `n^(k)` through the representatives.
    pub fn lift(&self, coords: &[Rational]) -> Element {
        assert_eq!(coords.len(), self.quotient_dim(), "quotient coordinate length");
        let dim = self.sub.ambient_dim();
        let mut out = Element::zero(dim);
        for (c, rep) in coords.iter().zip(&self.quotient_basis) {
            if !c.is_zero() {
                out = &out + &rep.scale(c);
            }
        }
        out
    }
}

/// `n = n^(0) ⊋ n^(1) ⊋ … ⊋ {0}` with `n^(k+1) = [n^(k), n^(k)]`.
///
/// The last level is always the zero subspace, with an empty quotient.
pub fn derived_series(g: &LieAlgebra, n: &Subspace) -> Result<Vec<FlagLevel>, LieError> {
    if n.ambient_dim() != g.dim() {
        return Err(LieError::DimensionMismatch {
            expected: g.dim(),
            found: n.ambient_dim(),
        });
    }
    let mut levels = Vec::new();
    let mut current = n.clone();
    loop {
        let next = crate::derived_subalgebra(g, &current)?;
        if next == current && !current.is_zero() {
            return Err(LieError::NotSolvable);
        }
        let done = current.is_zero();
        levels.push(FlagLevel::new(levels.len(), current, next.clone()));
        if done {
            return Ok(levels);
        }
        current = next;
    }
}

/// Coordinates of `x_n mod n^(k+1)` in the level's representative basis.
pub fn project(level: &FlagLevel, x_n: &Element) -> Result<Vec<Rational>, LieError> {
    if x_n.dim() != level.sub.ambient_dim() {
        return Err(LieError::DimensionMismatch {
            expected: level.sub.ambient_dim(),
            found: x_n.dim(),
        });
    }
    let coeffs = solve(&level.adapted, x_n.coords())?.ok_or(LieError::NotInSubspace)?;
    Ok(coeffs[..level.quotient_dim()].to_vec())
}

/// Matrix of `ad x_l` on `V_k` in the representative basis.
pub fn induced_action(g: &LieAlgebra, level: &FlagLevel, x_l: &Element) -> Result<Matrix, LieError> {
    let cols = level
        .quotient_basis
        .iter()
        .map(|rep| project(level, &g.bracket(x_l, rep)?))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_cols(&cols, level.quotient_dim())?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_linalg::q;

    fn names(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn heisenberg() -> LieAlgebra {
        LieAlgebra::new(names(&["p", "q", "z"]), [((0, 1), vec![(2, q(1, 1))])]).unwrap()
    }

    fn sl2_v1() -> LieAlgebra {
        LieAlgebra::new(
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
        .unwrap()
    }

    #[test]
    fn derived_series_examples() {
        let dims = |levels: &[FlagLevel]| levels.iter().map(|l| l.sub.dim()).collect::<Vec<_>>();

        let h = heisenberg();
        let levels = derived_series(&h, &Subspace::full(3)).unwrap();
        assert_eq!(dims(&levels), vec![3, 1, 0]);
        assert_eq!(levels[0].quotient_basis, vec![Element::basis(3, 0), Element::basis(3, 1)]);
        assert_eq!(levels[1].quotient_basis, vec![Element::basis(3, 2)]);
        assert!(levels[2].quotient_basis.is_empty());

        let ab = LieAlgebra::abelian(names(&["a", "b"])).unwrap();
        assert_eq!(dims(&derived_series(&ab, &Subspace::full(2)).unwrap()), vec![2, 0]);

        let levels = derived_series(&ab, &Subspace::zero(2)).unwrap();
        assert_eq!(levels.len(), 1);
        assert_eq!(levels[0].quotient_dim(), 0);
    }

    #[test]
    fn derived_series_rejects_perfect_algebra() {
        let g = sl2_v1();
        let sl2 = Subspace::coordinate(5, &[0, 1, 2]).unwrap();
        assert!(matches!(derived_series(&g, &sl2), Err(LieError::NotSolvable)));
    }

    #[test]
    fn representatives_follow_pivots() {
        // subspace pair whose smaller member is not a coordinate subspace
        let sub = Subspace::full(2);
        let next = Subspace::span(2, &[vec![q(1, 1), q(1, 1)]]).unwrap();
        let level = FlagLevel::new(0, sub, next);
        // next has pivot 0, so the representative is the row with pivot 1
        assert_eq!(level.quotient_basis, vec![Element::basis(2, 1)]);
        // (1, 0) = (1, 1) - (0, 1) projects to -1
        assert_eq!(project(&level, &Element::basis(2, 0)).unwrap(), vec![q(-1, 1)]);
    }

    #[test]
    fn project_examples() {
        let h = heisenberg();
        let levels = derived_series(&h, &Subspace::full(3)).unwrap();
        let l0 = &levels[0];
        assert_eq!(project(l0, &Element::basis(3, 2)).unwrap(), vec![q(0, 1), q(0, 1)]);
        assert_eq!(project(l0, &Element::basis(3, 0)).unwrap(), vec![q(1, 1), q(0, 1)]);
        assert_eq!(project(l0, &Element::from_i64(&[1, 0, 1])).unwrap(), vec![q(1, 1), q(0, 1)]);
        assert!(matches!(
            project(&levels[1], &Element::basis(3, 0)),
            Err(LieError::NotInSubspace)
        ));
    }

    #[test]
    fn induced_action_examples() {
        let g = sl2_v1();
        let n = Subspace::coordinate(5, &[3, 4]).unwrap();
        let levels = derived_series(&g, &n).unwrap();
        let a = induced_action(&g, &levels[0], &Element::basis(5, 0)).unwrap();
        assert_eq!(a, Matrix::from_i64(&[&[0, 1], &[0, 0]]));
        assert!(induced_action(&g, &levels[0], &Element::zero(5)).unwrap().is_zero());

        let ab = LieAlgebra::abelian(names(&["a"])).unwrap();
        let levels = derived_series(&ab, &Subspace::full(1)).unwrap();
        assert_eq!(induced_action(&ab, &levels[0], &Element::zero(1)).unwrap(), Matrix::zeros(1, 1));
    }

    #[test]
    fn lift_inverts_project_modulo_next() {
        let h = heisenberg();
        let levels = derived_series(&h, &Subspace::full(3)).unwrap();
        let y = levels[0].lift(&[q(2, 1), q(-1, 3)]);
        assert_eq!(y, Element::new(vec![q(2, 1), q(-1, 3), q(0, 1)]));
        assert_eq!(project(&levels[0], &y).unwrap(), vec![q(2, 1), q(-1, 3)]);
    }
}
