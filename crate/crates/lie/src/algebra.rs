use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use exact_linalg::{dot, image, Matrix, Rational, Subspace};
use serde::{Deserialize, Serialize};

use crate::LieError;

/// An element of a Lie algebra, by its coordinates in the algebra's basis.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Element(Vec<Rational>);

impl Element {
    pub fn new(coords: Vec<Rational>) -> Self {
        Element(coords)
    }

    pub fn zero(dim: usize) -> Self {
        Element(vec![Rational::zero(); dim])
    }

    /// The `i`-th basis vector.
    pub fn basis(dim: usize, i: usize) -> Self {
        Element(exact_linalg::unit_vec(dim, i))
    }

    pub fn from_i64(coords: &[i64]) -> Self {
        Element(coords.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        exact_linalg::is_zero_vec(&self.0)
    }

    pub fn scale(&self, c: &Rational) -> Element {
        Element(exact_linalg::scale_vec(c, &self.0))
    }

    /// Applies a linear map given as a matrix.
    pub fn apply(&self, m: &Matrix) -> Element {
        Element(m.mul_vec(&self.0))
    }
}

impl From<Vec<Rational>> for Element {
    fn from(v: Vec<Rational>) -> Self {
        Element(v)
    }
}

impl Add for &Element {
    type Output = Element;
    fn add(self, rhs: &Element) -> Element {
        Element(exact_linalg::add_vec(&self.0, &rhs.0))
    }
}

impl Sub for &Element {
    type Output = Element;
    fn sub(self, rhs: &Element) -> Element {
        Element(exact_linalg::sub_vec(&self.0, &rhs.0))
    }
}

impl Neg for &Element {
    type Output = Element;
    fn neg(self) -> Element {
        Element(self.0.iter().map(|x| -x).collect())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

/// Sparse structure constants of `[e_i, e_j]` for one ordered pair `i < j`.
pub type SparseVector = Vec<(usize, Rational)>;

/// A finite-dimensional Lie algebra over Q, given by structure constants.
///
/// Only the pairs `i < j` are stored; `[e_j, e_i] = -[e_i, e_j]` and
/// `[e_i, e_i] = 0` are implied. The Jacobi identity is not checked on
/// construction, see [`validate_algebra`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieAlgebra {
    basis_names: Vec<String>,
    brackets: BTreeMap<(usize, usize), SparseVector>,
}

impl LieAlgebra {
    pub fn new(
        basis_names: Vec<String>,
        brackets: impl IntoIterator<Item = ((usize, usize), SparseVector)>,
    ) -> Result<Self, LieError> {
        let dim = basis_names.len();
        let mut seen = HashSet::new();
        for name in &basis_names {
            if !seen.insert(name.as_str()) {
                return Err(LieError::DuplicateName(name.clone()));
            }
        }
        let mut table: BTreeMap<(usize, usize), SparseVector> = BTreeMap::new();
        for ((i, j), entries) in brackets {
            if i >= j {
                return Err(LieError::BracketOrder { i, j });
            }
            if j >= dim {
                return Err(LieError::IndexOutOfRange { index: j, dim });
            }
            let mut dense: BTreeMap<usize, Rational> = BTreeMap::new();
            if let Some(prev) = table.remove(&(i, j)) {
                dense.extend(prev);
            }
            for (k, c) in entries {
                if k >= dim {
                    return Err(LieError::IndexOutOfRange { index: k, dim });
                }
                *dense.entry(k).or_insert_with(Rational::zero) += c;
            }
            let sparse: SparseVector = dense.into_iter().filter(|(_, c)| !c.is_zero()).collect();
            if !sparse.is_empty() {
                table.insert((i, j), sparse);
            }
        }
        Ok(LieAlgebra {
            basis_names,
            brackets: table,
        })
    }

    /// Builds the algebra from a bracket function on basis pairs `i < j`.
    pub fn from_fn(
        basis_names: Vec<String>,
        mut bracket: impl FnMut(usize, usize) -> Vec<Rational>,
    ) -> Result<Self, LieError> {
        let dim = basis_names.len();
        let mut pairs = Vec::new();
        for i in 0..dim {
            for j in i + 1..dim {
                let v = bracket(i, j);
                if v.len() != dim {
                    return Err(LieError::DimensionMismatch { expected: dim, found: v.len() });
                }
                let sparse: SparseVector =
                    v.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                pairs.push(((i, j), sparse));
            }
        }
        Self::new(basis_names, pairs)
    }

    pub fn abelian(basis_names: Vec<String>) -> Result<Self, LieError> {
        Self::new(basis_names, [])
    }

    pub fn dim(&self) -> usize {
        self.basis_names.len()
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis_names.iter().position(|n| n == name)
    }

    /// Nonzero structure constants, ordered by pair.
    pub fn brackets(&self) -> impl Iterator<Item = (&(usize, usize), &SparseVector)> {
        self.brackets.iter()
    }

    /// `[e_i, e_j]` as a dense vector.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Rational> {
        let dim = self.dim();
        let mut out = vec![Rational::zero(); dim];
        let (key, sign) = match i.cmp(&j) {
            std::cmp::Ordering::Less => ((i, j), false),
            std::cmp::Ordering::Greater => ((j, i), true),
            std::cmp::Ordering::Equal => return out,
        };
        if let Some(entries) = self.brackets.get(&key) {
            for (k, c) in entries {
                out[*k] = if sign { -c } else { c.clone() };
            }
        }
        out
    }

    fn check_dim(&self, x: &Element) -> Result<(), LieError> {
        if x.dim() != self.dim() {
            return Err(LieError::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        Ok(())
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &Element, y: &Element) -> Result<Element, LieError> {
        self.check_dim(x)?;
        self.check_dim(y)?;
        Ok(self.bracket_raw(x.coords(), y.coords()))
    }

    pub(crate) fn bracket_raw(&self, x: &[Rational], y: &[Rational]) -> Element {
        let mut out = vec![Rational::zero(); self.dim()];
        for (&(i, j), entries) in &self.brackets {
            // [x, y] picks up x_i y_j [e_i, e_j] + x_j y_i [e_j, e_i]
            let c = &(&x[i] * &y[j]) - &(&x[j] * &y[i]);
            if c.is_zero() {
                continue;
            }
            for (k, s) in entries {
                out[*k] += &c * s;
            }
        }
        Element(out)
    }

    /// Matrix of `ad x`; column `j` is `[x, e_j]`.
    pub fn ad_matrix(&self, x: &Element) -> Matrix {
        assert_eq!(x.dim(), self.dim(), "element dimension does not match algebra");
        let n = self.dim();
        let cols: Vec<Vec<Rational>> = (0..n)
            .map(|j| self.bracket_raw(x.coords(), &exact_linalg::unit_vec(n, j)).into_coords())
            .collect();
        Matrix::from_cols(&cols, n).expect("columns have algebra dimension")
    }

    /// Span of `[a, b]` over basis vectors `a` of `s` and `b` of `t`.
    pub fn bracket_span(&self, s: &Subspace, t: &Subspace) -> Subspace {
        let sv = s.basis_vectors();
        let tv = t.basis_vectors();
        let mut vectors = Vec::with_capacity(sv.len() * tv.len());
        for a in &sv {
            for b in &tv {
                let c = self.bracket_raw(a, b);
                if !c.is_zero() {
                    vectors.push(c.into_coords());
                }
            }
        }
        Subspace::span(self.dim(), &vectors).expect("brackets have algebra dimension")
    }

    /// Whether `s` is closed under the bracket.
    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        s.contains_subspace(&self.bracket_span(s, s))
    }

    /// Whether `[g, s] ⊆ s`.
    pub fn is_ideal(&self, s: &Subspace) -> bool {
        s.contains_subspace(&self.bracket_span(&Subspace::full(self.dim()), s))
    }

    /// Elements of `s` commuting with every element of `s`.
    pub fn center_of(&self, s: &Subspace) -> Subspace {
        let basis = s.basis_vectors();
        let k = basis.len();
        if k == 0 {
            return Subspace::zero(self.dim());
        }
        // c = Σ a_i s_i is central iff Σ a_i [s_i, s_j] = 0 for all j
        let mut rows = Vec::new();
        for sj in &basis {
            let cols: Vec<Vec<Rational>> = basis
                .iter()
                .map(|si| self.bracket_raw(si, sj).into_coords())
                .collect();
            rows.push(Matrix::from_cols(&cols, self.dim()).expect("algebra dimension"));
        }
        let system = rows.iter().skip(1).fold(rows[0].clone(), |acc, m| acc.vstack(m));
        let coeffs = exact_linalg::kernel(&system);
        let vectors: Vec<Vec<Rational>> = coeffs
            .basis_vectors()
            .iter()
            .map(|a| s.basis().vec_mul(a))
            .collect();
        Subspace::span(self.dim(), &vectors).expect("algebra dimension")
    }

    /// Whether `ad x` maps `s` into itself.
    pub fn normalizes(&self, x: &Element, s: &Subspace) -> bool {
        s.basis_vectors()
            .iter()
            .all(|v| s.contains(self.bracket_raw(x.coords(), v).coords()))
    }
}

/// Checks the Jacobi identity on every triple of distinct basis vectors.
///
/// Triples with a repeated index satisfy it automatically by antisymmetry.
pub fn validate_algebra(g: &LieAlgebra) -> Result<(), LieError> {
    let n = g.dim();
    let basis: Vec<Element> = (0..n).map(|i| Element::basis(n, i)).collect();
    let br = |x: &Element, y: &Element| g.bracket_raw(x.coords(), y.coords());
    let mut failures = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let eij = br(&basis[i], &basis[j]);
            for k in j + 1..n {
                let ejk = br(&basis[j], &basis[k]);
                let eki = br(&basis[k], &basis[i]);
                let total = &(&br(&basis[i], &ejk) + &br(&basis[j], &eki)) + &br(&basis[k], &eij);
                if !total.is_zero() {
                    failures.push((i, j, k));
                }
            }
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(LieError::Jacobi { failures })
    }
}

/// `[s, s]`, after checking that `s` is a subalgebra.
pub fn derived_subalgebra(g: &LieAlgebra, s: &Subspace) -> Result<Subspace, LieError> {
    let d = g.bracket_span(s, s);
    if !s.contains_subspace(&d) {
        return Err(LieError::NotSubalgebra);
    }
    Ok(d)
}

/// `κ(e_i, e_j) = tr(ad e_i · ad e_j)`.
pub fn killing_form(g: &LieAlgebra) -> Matrix {
    let n = g.dim();
    let ads: Vec<Matrix> = (0..n).map(|i| g.ad_matrix(&Element::basis(n, i))).collect();
    trace_form(&ads)
}

/// Killing form of the subalgebra `s` on its own RREF basis, i.e. traces of
/// the adjoint action restricted to `s`.
pub fn killing_form_of(g: &LieAlgebra, s: &Subspace) -> Result<Matrix, LieError> {
    let basis = s.basis_vectors();
    let k = basis.len();
    let mut ads = Vec::with_capacity(k);
    for x in &basis {
        let mut cols = Vec::with_capacity(k);
        for y in &basis {
            let c = g.bracket_raw(x, y);
            cols.push(s.coordinates(c.coords()).ok_or(LieError::NotSubalgebra)?);
        }
        ads.push(Matrix::from_cols(&cols, k).expect("subspace coordinates"));
    }
    Ok(trace_form(&ads))
}

fn trace_form(ads: &[Matrix]) -> Matrix {
    let n = ads.len();
    // tr(AB) = Σ_ij A_ij B_ji
    let transposes: Vec<Matrix> = ads.iter().map(Matrix::transpose).collect();
    Matrix::from_fn(n, n, |i, j| dot(ads[i].entries(), transposes[j].entries()))
}

/// Lower central series `n ⊇ [n, n] ⊇ [n, [n, n]] ⊇ …` down to the first
/// repeated term. `n` is nilpotent exactly when the last entry is zero.
pub fn lower_central_series(g: &LieAlgebra, n: &Subspace) -> Vec<Subspace> {
    let mut series = vec![n.clone()];
    loop {
        let last = series.last().expect("series is nonempty");
        if last.is_zero() {
            return series;
        }
        let next = g.bracket_span(n, last);
        if &next == last {
            return series;
        }
        series.push(next);
    }
}

/// Nilpotency class of `n` (0 for the zero subspace), or `None` if `n` is not nilpotent.
pub fn nilpotency_class(g: &LieAlgebra, n: &Subspace) -> Option<usize> {
    let series = lower_central_series(g, n);
    series.last().is_some_and(Subspace::is_zero).then(|| series.len() - 1)
}

/// Image of `ad x`; handy for diagnostics.
pub fn ad_image(g: &LieAlgebra, x: &Element) -> Subspace {
    image(&g.ad_matrix(x))
}
