//! Levi data: a designated splitting `g = l ⊕ n` into a reductive subalgebra
//! and a nilpotent ideal, together with the checks that make it trustworthy.
//!
//! The splitting is input, not computed. [`validate_levi`] accepts it only if
//!
//! * `l ∩ n = 0` and `l + n = g`,
//! * `l` is a subalgebra and `n` an ideal,
//! * `n` is nilpotent,
//! * `l = z(l) ⊕ [l, l]` with a nondegenerate Killing form on `[l, l]`,
//! * every element of `z(l)` acts semisimply on `g`.
//!
//! The last condition is what separates the Lie algebra of a reductive
//! *group* from an abstractly reductive Lie algebra: a central element of `l`
//! acting nilpotently on `n` (say `[t, a] = b`) would generate a unipotent
//! subgroup, so `l` would not be the Lie algebra of a reductive subgroup.
//!
//! With all conditions in place, `n` is the whole nilradical. Let `r` be the
//! nilradical. Since `n` is a nilpotent ideal, `n ⊆ r`, and `r/n` is a
//! nilpotent ideal of `g/n ≅ l`, so it sits inside `z(l)` because `[l, l]` is
//! semisimple. Elements of the nilradical act nilpotently on `g`, so for
//! `z + m ∈ r` with `z ∈ z(l)`, `m ∈ n`, `ad z` is nilpotent on `g/n` and on
//! the composition factors of `n` (where `ad m` acts by zero); since `ad z`
//! is also semisimple it vanishes on every factor, and a semisimple map that
//! is zero on all factors of a stable filtration is zero. So `z` is central
//! in `g`. Central elements of `l` are semisimple by declaration (they span
//! the torus part of the reductive factor), so `exp(z)` is not unipotent
//! unless `z = 0`. Hence the Lie algebra of the unipotent radical is `n`.

use exact_linalg::{is_squarefree, minimal_polynomial, rref, solve, Rational, Subspace};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{killing_form_of, nilpotency_class};
use crate::{Element, LieAlgebra, LieError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeviData {
    levi: Subspace,
    nilradical: Subspace,
}

impl LeviData {
    pub fn new(levi: Subspace, nilradical: Subspace) -> Result<Self, LieError> {
        if levi.ambient_dim() != nilradical.ambient_dim() {
            return Err(LieError::DimensionMismatch {
                expected: levi.ambient_dim(),
                found: nilradical.ambient_dim(),
            });
        }
        Ok(LeviData { levi, nilradical })
    }

    /// Spans of the given basis vectors.
    pub fn from_indices(dim: usize, levi: &[usize], nilradical: &[usize]) -> Result<Self, LieError> {
        Self::new(
            Subspace::coordinate(dim, levi)?,
            Subspace::coordinate(dim, nilradical)?,
        )
    }

    pub fn levi(&self) -> &Subspace {
        &self.levi
    }

    pub fn nilradical(&self) -> &Subspace {
        &self.nilradical
    }

    pub fn ambient_dim(&self) -> usize {
        self.levi.ambient_dim()
    }
}

/// What [`validate_levi`] learned about a valid splitting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeviReport {
    /// `z(l)`.
    pub center: Subspace,
    /// `[l, l]`.
    pub semisimple_part: Subspace,
    /// Nilpotency class of `n`.
    pub nilpotency_class: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LeviError {
    #[error("levi: ambient dimension {found} does not match algebra dimension {expected}")]
    AmbientMismatch { expected: usize, found: usize },
    #[error("levi: levi and nilradical intersect nontrivially (dimension {overlap})")]
    NotDirectSum { overlap: usize },
    #[error("levi: levi + nilradical has dimension {found}, algebra has dimension {expected}")]
    DoesNotSpan { expected: usize, found: usize },
    #[error("levi: levi subspace is not a subalgebra")]
    LeviNotSubalgebra,
    #[error("levi: nilradical is not an ideal")]
    NilradicalNotIdeal,
    #[error("levi: nilradical is not nilpotent")]
    NilradicalNotNilpotent,
    #[error("levi: levi is not the direct sum of its center (dim {center}) and derived algebra (dim {derived})")]
    CenterNotComplemented { center: usize, derived: usize },
    #[error("levi: Killing form of [l,l] is degenerate (rank {rank} of {dim})")]
    DegenerateKilling { rank: usize, dim: usize },
    #[error("levi: center acts non-semisimply (central element {element:?} has minimal polynomial {min_poly})")]
    CenterNotSemisimple { element: Vec<Rational>, min_poly: String },
}

pub fn validate_levi(g: &LieAlgebra, ld: &LeviData) -> Result<LeviReport, LeviError> {
    let dim = g.dim();
    if ld.ambient_dim() != dim {
        return Err(LeviError::AmbientMismatch {
            expected: dim,
            found: ld.ambient_dim(),
        });
    }
    let (l, n) = (ld.levi(), ld.nilradical());

    let overlap = l.intersection(n).dim();
    if overlap != 0 {
        return Err(LeviError::NotDirectSum { overlap });
    }
    let spanned = l.dim() + n.dim();
    if spanned != dim {
        return Err(LeviError::DoesNotSpan { expected: dim, found: spanned });
    }
    if !g.is_subalgebra(l) {
        return Err(LeviError::LeviNotSubalgebra);
    }
    if !g.is_ideal(n) {
        return Err(LeviError::NilradicalNotIdeal);
    }
    let class = nilpotency_class(g, n).ok_or(LeviError::NilradicalNotNilpotent)?;

    let center = g.center_of(l);
    let derived = g.bracket_span(l, l);
    if !center.intersection(&derived).is_zero() || center.dim() + derived.dim() != l.dim() {
        return Err(LeviError::CenterNotComplemented {
            center: center.dim(),
            derived: derived.dim(),
        });
    }

    let kappa = killing_form_of(g, &derived).map_err(|_| LeviError::LeviNotSubalgebra)?;
    let rank = rref(&kappa).rank;
    if rank != derived.dim() {
        return Err(LeviError::DegenerateKilling { rank, dim: derived.dim() });
    }

    // z(l) is abelian, so ad of its elements commute and semisimplicity of a
    // basis gives semisimplicity of every element.
    for z in center.basis_vectors() {
        let ad = g.ad_matrix(&Element::new(z.clone()));
        let p = minimal_polynomial(&ad).expect("ad matrix is square");
        if !is_squarefree(&p).expect("minimal polynomial is nonzero") {
            return Err(LeviError::CenterNotSemisimple {
                element: z,
                min_poly: p.to_string(),
            });
        }
    }

    Ok(LeviReport {
        center,
        semisimple_part: derived,
        nilpotency_class: class,
    })
}

/// Splits `x = x_l + x_n` along `g = l ⊕ n`.
pub fn decompose(ld: &LeviData, x: &Element) -> Result<(Element, Element), LieError> {
    let dim = ld.ambient_dim();
    if x.dim() != dim {
        return Err(LieError::DimensionMismatch { expected: dim, found: x.dim() });
    }
    let lb = ld.levi().basis();
    let nb = ld.nilradical().basis();
    let columns = lb.vstack(nb).transpose();
    let coeffs = solve(&columns, x.coords())?.ok_or(LieError::NotDirectSum)?;
    if lb.rows() + nb.rows() != dim {
        return Err(LieError::NotDirectSum);
    }
    let (cl, cn) = coeffs.split_at(lb.rows());
    Ok((Element::new(lb.vec_mul(cl)), Element::new(nb.vec_mul(cn))))
}

/// Whether `exp(t·x)` is a unipotent one-parameter subgroup: `ad x` is
/// nilpotent and the Levi part of `x` has no component along `z(l)`.
///
/// Assumes `ld` has passed [`validate_levi`]; with `l = z(l) ⊕ [l, l]` the
/// second condition is `x_l ∈ [l, l]`.
pub fn is_nilpotent_element(g: &LieAlgebra, ld: &LeviData, x: &Element) -> bool {
    assert_eq!(x.dim(), g.dim(), "element dimension does not match algebra");
    if !g.ad_matrix(x).is_nilpotent() {
        return false;
    }
    let Ok((x_l, _)) = decompose(ld, x) else {
        return false;
    };
    let derived = g.bracket_span(ld.levi(), ld.levi());
    derived.contains(x_l.coords())
}
