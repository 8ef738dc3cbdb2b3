//! Row reduction and the linear solves built on it.

use crate::{LinalgError, Matrix, Rational, Subspace};

/// Output of [`rref`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Reduced row-echelon form by Gauss-Jordan elimination.
///
/// The pivot in each column is the first row (at or below the current one)
/// with a nonzero entry. The reduced form is unique, so the choice only
/// affects intermediate values.
pub fn rref(m: &Matrix) -> Rref {
    let (rows, cols) = (m.rows(), m.cols());
    let mut a: Vec<Vec<Rational>> = m.row_vecs();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip().expect("pivot is nonzero");
        if !inv.is_one() {
            for x in a[r][c..].iter_mut() {
                *x *= &inv;
            }
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !p.is_zero() {
                    *x -= &(&f * p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let matrix = Matrix::from_rows(a, cols).expect("row lengths preserved");
    Rref {
        matrix,
        rank: pivots.len(),
        pivots,
    }
}

/// Solves `a · x = b`. Returns `None` when `b` is outside the column space of
/// `a`; otherwise the solution with every free variable set to zero.
pub fn solve(a: &Matrix, b: &[Rational]) -> Result<Option<Vec<Rational>>, LinalgError> {
    if a.rows() != b.len() {
        return Err(LinalgError::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let n = a.cols();
    let bcol = Matrix::from_cols(&[b.to_vec()], b.len())?;
    let red = rref(&a.hstack(&bcol));
    if red.pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &p) in red.pivots.iter().enumerate() {
        x[p] = red.matrix[(i, n)].clone();
    }
    Ok(Some(x))
}

/// Column space of `a`.
pub fn image(a: &Matrix) -> Subspace {
    Subspace::from_rows(&a.transpose())
}

/// Null space of `a`.
pub fn kernel(a: &Matrix) -> Subspace {
    let n = a.cols();
    let red = rref(a);
    let free: Vec<usize> = (0..n).filter(|c| !red.pivots.contains(c)).collect();
    let basis: Vec<Vec<Rational>> = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (i, &p) in red.pivots.iter().enumerate() {
                v[p] = -&red.matrix[(i, f)];
            }
            v
        })
        .collect();
    Subspace::span(n, &basis).expect("kernel vectors have ambient length")
}

/// Left null space: all row vectors `φ` with `φ · a = 0`.
pub fn left_kernel(a: &Matrix) -> Subspace {
    kernel(&a.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::q;

    #[test]
    fn rref_examples() {
        let z = Matrix::zeros(2, 2);
        let r = rref(&z);
        assert_eq!(r.matrix, z);
        assert_eq!(r.rank, 0);
        assert!(r.pivots.is_empty());

        let r = rref(&Matrix::from_i64(&[&[2, 4], &[1, 2]]));
        assert_eq!(r.matrix, Matrix::from_i64(&[&[1, 2], &[0, 0]]));
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);

        let id = Matrix::identity(2);
        let r = rref(&id);
        assert_eq!(r.matrix, id);
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn rref_fractions() {
        let r = rref(&Matrix::from_i64(&[&[0, 3, 1], &[2, 1, 0]]));
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.matrix.row(0), &[q(1, 1), q(0, 1), q(-1, 6)]);
        assert_eq!(r.matrix.row(1), &[q(0, 1), q(1, 1), q(1, 3)]);
    }

    #[test]
    fn solve_examples() {
        let x = solve(&Matrix::identity(2), &[q(3, 1), q(-1, 2)]).unwrap();
        assert_eq!(x, Some(vec![q(3, 1), q(-1, 2)]));

        let a = Matrix::from_i64(&[&[1, 0], &[0, 0]]);
        assert_eq!(solve(&a, &[q(0, 1), q(1, 1)]).unwrap(), None);

        let a = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        assert_eq!(solve(&a, &[q(1, 1), q(0, 1)]).unwrap(), Some(vec![q(0, 1), q(1, 1)]));
    }

    #[test]
    fn solve_dimension_mismatch() {
        let err = solve(&Matrix::identity(2), &[q(1, 1)]).unwrap_err();
        assert!(matches!(err, LinalgError::DimensionMismatch { expected: 2, found: 1 }));
    }

    #[test]
    fn solve_empty_system() {
        assert_eq!(solve(&Matrix::zeros(0, 2), &[]).unwrap(), Some(vec![q(0, 1), q(0, 1)]));
        assert_eq!(solve(&Matrix::zeros(1, 0), &[q(1, 1)]).unwrap(), None);
    }

    #[test]
    fn image_kernel_examples() {
        let z = Matrix::zeros(2, 2);
        assert_eq!(image(&z).dim(), 0);
        assert_eq!(kernel(&z), Subspace::full(2));

        let n = Matrix::from_i64(&[&[0, 1], &[0, 0]]);
        let e1 = Subspace::span(2, &[vec![q(1, 1), q(0, 1)]]).unwrap();
        assert_eq!(image(&n), e1);
        assert_eq!(kernel(&n), e1);

        let id = Matrix::identity(3);
        assert_eq!(image(&id), Subspace::full(3));
        assert_eq!(kernel(&id), Subspace::zero(3));
    }

    #[test]
    fn left_kernel_annihilates() {
        let a = Matrix::from_i64(&[&[1, 2], &[2, 4], &[0, 1]]);
        let lk = left_kernel(&a);
        assert_eq!(lk.dim(), 1);
        for v in lk.basis_vectors() {
            assert!(a.vec_mul(&v).iter().all(Rational::is_zero));
        }
    }
}
