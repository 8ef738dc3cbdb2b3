//! Decides whether `G/H` is affine, for `H` the one-parameter unipotent
//! subgroup generated by a nilpotent element `x` of `g = l ⊕ n`.
//!
//! The answer is NOT_AFFINE exactly when `H` is conjugate into the Levi
//! factor. The procedure walks down the derived series of `n`. At level `k`
//! it looks at the quotient `V_k = n^(k) / n^(k+1)`, the action `A` of `x_l`
//! on it and the image `v̄` of `x_n`:
//!
//! - if `v̄ ∈ Im A`, conjugating by `exp(ad y)` for a lift `y` of a solution
//!   of `A ȳ = v̄` pushes the nilradical part of `x` one level deeper;
//! - otherwise a functional vanishing on `Im A` and not on `v̄` cuts out the
//!   hyperplane from which a section of the `H`-action is built, and `G/H`
//!   is affine.
//!
//! The test uses `ad x_l` rather than `exp(ad x_l) − 1`; the two have the
//! same image on every quotient because `exp(N) − 1 = N · U` with `U`
//! unipotent.
//!
//! Each decision comes with a certificate checkable by `affinity-certify`
//! and a per-level trace.

use exact_linalg::{dot, exp_nilpotent, image, left_kernel, solve, Matrix, Rational, Subspace};
use lie_core::{
    decompose, derived_series, induced_action, is_nilpotent_element, project, validate_algebra,
    validate_levi, Element, FlagLevel, LeviData, LeviError, LieAlgebra, LieError,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use affinity_certify::{Certificate, EmbeddingCert, SectionCert, VerdictKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecideError {
    #[error("element is zero: H must be one-dimensional")]
    ZeroElement,
    #[error("element is not nilpotent")]
    NotNilpotent,
    #[error("element has dimension {found}, algebra has dimension {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid algebra: {0}")]
    InvalidAlgebra(LieError),
    #[error(transparent)]
    InvalidLevi(#[from] LeviError),
    #[error("conjugator is not ad-nilpotent")]
    NotAdNilpotent,
    #[error("projected element lies in the image of the action; no section functional")]
    InImage,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

fn internal(e: impl std::fmt::Display) -> DecideError {
    DecideError::Internal(e.to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "branch", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Branch {
    /// `A ȳ = v̄`; `y` is `ȳ` lifted through the level's representatives.
    Conjugate { ybar: Vec<Rational>, y: Element },
    /// `phi · A = 0`, `phi · v̄ = 1`.
    Section { phi: Vec<Rational> },
}

/// What happened at one level of the derived series.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelRecord {
    pub level: usize,
    /// The element entering this level.
    pub element: Element,
    pub action: Matrix,
    pub image: Subspace,
    pub vbar: Vec<Rational>,
    #[serde(flatten)]
    pub branch: Branch,
}

impl LevelRecord {
    /// `dim V_k`.
    pub fn quotient_dim(&self) -> usize {
        self.vbar.len()
    }

    pub fn rank(&self) -> usize {
        self.image.dim()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub certificate: Certificate,
    pub trace: Vec<LevelRecord>,
}

/// Checks the hypotheses of [`decide`].
pub fn check_input(g: &LieAlgebra, ld: &LeviData, x: &Element) -> Result<(), DecideError> {
    validate_algebra(g).map_err(DecideError::InvalidAlgebra)?;
    validate_levi(g, ld)?;
    if x.dim() != g.dim() {
        return Err(DecideError::DimensionMismatch { expected: g.dim(), found: x.dim() });
    }
    if x.is_zero() {
        return Err(DecideError::ZeroElement);
    }
    if !is_nilpotent_element(g, ld, x) {
        return Err(DecideError::NotNilpotent);
    }
    Ok(())
}

pub fn decide(g: &LieAlgebra, ld: &LeviData, x: &Element) -> Result<Verdict, DecideError> {
    check_input(g, ld, x)?;
    let levels = derived_series(g, ld.nilradical()).map_err(DecideError::InvalidAlgebra)?;
    let (levi_part, _) = decompose(ld, x).map_err(internal)?;

    let mut current = x.clone();
    let mut trace = Vec::new();
    let mut conjugators = Vec::new();
    for level in levels.iter().filter(|l| l.quotient_dim() > 0) {
        let (record, next) = step_level(g, ld, level, &current)?;
        let branch = record.branch.clone();
        trace.push(record);
        match branch {
            Branch::Section { phi } => {
                let certificate = Certificate::Section(SectionCert {
                    level: level.index,
                    conjugators,
                    phi,
                });
                return Ok(Verdict { kind: VerdictKind::Affine, certificate, trace });
            }
            Branch::Conjugate { y, .. } => {
                let (l_next, _) = decompose(ld, &next).map_err(internal)?;
                if l_next != levi_part {
                    return Err(internal(format!("Levi part changed at level {}", level.index)));
                }
                conjugators.push(y);
                current = next;
            }
        }
    }

    if !ld.levi().contains(current.coords()) || current.is_zero() {
        return Err(internal("series exhausted without reaching the Levi factor"));
    }
    let certificate = Certificate::Embedding(EmbeddingCert { conjugators, final_element: current });
    Ok(Verdict { kind: VerdictKind::NotAffine, certificate, trace })
}

/// One step of the descent. Returns the record and the element handed to the
/// next level (unchanged on the section branch).
pub fn step_level(
    g: &LieAlgebra,
    ld: &LeviData,
    level: &FlagLevel,
    x: &Element,
) -> Result<(LevelRecord, Element), DecideError> {
    let k = level.index;
    let (x_l, x_n) = decompose(ld, x).map_err(internal)?;
    let vbar = project(level, &x_n)
        .map_err(|_| internal(format!("nilradical part not in derived term {k}")))?;
    let action = induced_action(g, level, &x_l).map_err(internal)?;
    let img = image(&action);

    let (branch, next) = match solve_conjugator(level, &action, &vbar)? {
        Some((ybar, y)) => {
            let next = conjugate_by_exp(g, &y, x)?;
            let (_, n_next) = decompose(ld, &next).map_err(internal)?;
            if !level.next.contains(n_next.coords()) {
                return Err(internal(format!("conjugation at level {k} did not descend")));
            }
            (Branch::Conjugate { ybar, y }, next)
        }
        None => {
            let phi = build_section_functional(&action, &vbar)?;
            (Branch::Section { phi }, x.clone())
        }
    };
    let record = LevelRecord {
        level: k,
        element: x.clone(),
        action,
        image: img,
        vbar,
        branch,
    };
    Ok((record, next))
}

/// The canonical solution `ȳ` of `action · ȳ = vbar` (free variables zero)
/// and its lift `y ∈ n^(k)`, or `None` when `vbar ∉ Im action`.
pub fn solve_conjugator(
    level: &FlagLevel,
    action: &Matrix,
    vbar: &[Rational],
) -> Result<Option<(Vec<Rational>, Element)>, DecideError> {
    if action.rows() != level.quotient_dim() || vbar.len() != level.quotient_dim() {
        return Err(DecideError::DimensionMismatch {
            expected: level.quotient_dim(),
            found: vbar.len(),
        });
    }
    Ok(solve(action, vbar).map_err(internal)?.map(|ybar| {
        let y = level.lift(&ybar);
        (ybar, y)
    }))
}

/// `exp(ad y) x`.
pub fn conjugate_by_exp(g: &LieAlgebra, y: &Element, x: &Element) -> Result<Element, DecideError> {
    if y.dim() != g.dim() || x.dim() != g.dim() {
        return Err(DecideError::DimensionMismatch {
            expected: g.dim(),
            found: if y.dim() != g.dim() { y.dim() } else { x.dim() },
        });
    }
    let u = exp_nilpotent(&g.ad_matrix(y)).map_err(|_| DecideError::NotAdNilpotent)?;
    Ok(x.apply(&u))
}

/// The functional `φ` with `φ · a = 0` and `φ · vbar = 1`: the first vector
/// of the RREF basis of the left kernel of `a` not vanishing on `vbar`,
/// rescaled.
pub fn build_section_functional(a: &Matrix, vbar: &[Rational]) -> Result<Vec<Rational>, DecideError> {
    if a.rows() != vbar.len() {
        return Err(DecideError::DimensionMismatch { expected: a.rows(), found: vbar.len() });
    }
    for b in left_kernel(a).basis_vectors() {
        if let Some(inv) = dot(&b, vbar).recip() {
            return Ok(b.iter().map(|c| c * &inv).collect());
        }
    }
    Err(DecideError::InImage)
}
