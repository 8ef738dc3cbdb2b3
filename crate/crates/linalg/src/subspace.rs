use serde::{Deserialize, Serialize};

use crate::{rref, LinalgError, Matrix, Rational};

/// A linear subspace of `Q^n`, stored by its reduced row-echelon basis.
///
/// Because the RREF basis of a subspace is unique, two `Subspace` values are
/// equal exactly when they describe the same subspace.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "SubspaceRepr", into = "SubspaceRepr")]
pub struct Subspace {
    ambient_dim: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct SubspaceRepr {
    ambient_dim: usize,
    basis: Vec<Vec<Rational>>,
}

impl TryFrom<SubspaceRepr> for Subspace {
    type Error = LinalgError;
    fn try_from(r: SubspaceRepr) -> Result<Self, LinalgError> {
        Subspace::span(r.ambient_dim, &r.basis)
    }
}

impl From<Subspace> for SubspaceRepr {
    fn from(s: Subspace) -> Self {
        SubspaceRepr {
            ambient_dim: s.ambient_dim,
            basis: s.basis.row_vecs(),
        }
    }
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::zeros(0, ambient_dim),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: Matrix::identity(ambient_dim),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Row space of `m`.
    pub fn from_rows(m: &Matrix) -> Self {
        let red = rref(m);
        let rows: Vec<Vec<Rational>> = (0..red.rank).map(|i| red.matrix.row(i).to_vec()).collect();
        Subspace {
            ambient_dim: m.cols(),
            basis: Matrix::from_rows(rows, m.cols()).expect("rref rows have ambient length"),
            pivots: red.pivots,
        }
    }

    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self, LinalgError> {
        Ok(Self::from_rows(&Matrix::from_rows(vectors.to_vec(), ambient_dim)?))
    }

    /// Span of standard basis vectors `e_i` for the given indices.
    pub fn coordinate(ambient_dim: usize, indices: &[usize]) -> Result<Self, LinalgError> {
        let vectors = indices
            .iter()
            .map(|&i| {
                if i >= ambient_dim {
                    return Err(LinalgError::IndexOutOfRange { index: i, dim: ambient_dim });
                }
                let mut v = vec![Rational::zero(); ambient_dim];
                v[i] = Rational::one();
                Ok(v)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::span(ambient_dim, &vectors)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Basis as the rows of a matrix in reduced row-echelon form.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.row_vecs()
    }

    /// Pivot column of each basis row.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(v.len(), self.ambient_dim, "vector length does not match ambient dimension");
        // Each basis row has a 1 at its pivot and 0 at the other pivots, so
        // the pivot entries of v are the only candidate coordinates.
        let coords: Vec<Rational> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let recombined = self.basis.vec_mul(&coords);
        (recombined == v).then_some(coords)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        other.basis_vectors().iter().all(|v| self.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        Subspace::from_rows(&self.basis.vstack(&other.basis))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient_dim, other.ambient_dim);
        // (a, b) with a·A = b·B parametrize the intersection
        let stacked = self.basis.vstack(&-&other.basis);
        let rel = crate::left_kernel(&stacked);
        let k = self.dim();
        let vectors: Vec<Vec<Rational>> = rel
            .basis_vectors()
            .iter()
            .map(|c| self.basis.vec_mul(&c[..k]))
            .collect();
        Subspace::span(self.ambient_dim, &vectors).expect("ambient length preserved")
    }

    /// Image of the subspace under a linear map given as a matrix acting on columns.
    pub fn map(&self, a: &Matrix) -> Subspace {
        assert_eq!(a.cols(), self.ambient_dim);
        let vectors: Vec<Vec<Rational>> =
            self.basis_vectors().iter().map(|v| a.mul_vec(v)).collect();
        Subspace::span(a.rows(), &vectors).expect("ambient length preserved")
    }
}
