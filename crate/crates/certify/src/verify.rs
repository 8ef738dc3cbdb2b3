use std::fmt;

use exact_linalg::{dot, exp_nilpotent, is_zero_vec, left_kernel, solve, Matrix, Rational};
use lie_core::{
    decompose, derived_series, induced_action, is_nilpotent_element, project, validate_algebra,
    validate_levi, Element, FlagLevel, LeviData, LieAlgebra,
};

use crate::{Certificate, EmbeddingCert, SectionCert};

/// Why a certificate was not accepted.
///
/// Besides the mathematical conditions, the verifiers insist on the canonical
/// choices (free variables zero, representatives from the RREF basis, the
/// normalised first admissible kernel vector), so any change to a valid
/// certificate is detected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rejection {
    InvalidInput(String),
    /// Certificate vectors have the wrong length.
    Shape { what: String, expected: usize, found: usize },
    ConjugatorCount { expected: usize, found: usize },
    /// The element handed to step `level` has nilradical part outside `n^(level)`.
    TooShallow { level: usize },
    /// `y_k` is not a combination of the level's quotient representatives.
    ConjugatorNotRepresentative { level: usize },
    /// `A ȳ ≠ v̄`: the conjugation does not clear the level.
    ConjugatorDoesNotClear { level: usize },
    /// `ȳ` solves the system but is not the free-variables-zero solution.
    ConjugatorNotCanonical { level: usize },
    FinalMismatch,
    FinalNotInLevi,
    FinalZero,
    LevelOutOfRange { level: usize, levels: usize },
    PhiNotAnnihilating { level: usize },
    PhiMissesElement { level: usize },
    PhiNotNormalized { level: usize, value: Rational },
    PhiNotCanonical { level: usize },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Rejection::*;
        match self {
            InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Shape { what, expected, found } => {
                write!(f, "{what} has length {found}, expected {expected}")
            }
            ConjugatorCount { expected, found } => {
                write!(f, "certificate has {found} conjugators, expected {expected}")
            }
            TooShallow { level } => {
                write!(f, "level {level}: nilradical part is not in the level-{level} derived term")
            }
            ConjugatorNotRepresentative { level } => {
                write!(f, "level {level}: conjugator is not spanned by the quotient representatives")
            }
            ConjugatorDoesNotClear { level } => {
                write!(f, "level {level}: conjugator does not solve A y = v")
            }
            ConjugatorNotCanonical { level } => {
                write!(f, "level {level}: conjugator is not the canonical solution")
            }
            FinalMismatch => write!(f, "recomputed final element differs from the certificate"),
            FinalNotInLevi => write!(f, "final element has a nonzero nilradical component"),
            FinalZero => write!(f, "final element is zero"),
            LevelOutOfRange { level, levels } => {
                write!(f, "section level {level} is not a nonzero quotient (series has {levels})")
            }
            PhiNotAnnihilating { level } => {
                write!(f, "level {level}: phi does not vanish on the image of the action")
            }
            PhiMissesElement { level } => write!(f, "level {level}: phi vanishes on v"),
            PhiNotNormalized { level, value } => {
                write!(f, "level {level}: phi(v) = {value}, expected 1")
            }
            PhiNotCanonical { level } => {
                write!(f, "level {level}: phi is not the canonical functional")
            }
        }
    }
}

impl std::error::Error for Rejection {}

/// The normalised functional a section certificate must carry: the first
/// vector `b` of the RREF basis of the left kernel of `a` with `b·v ≠ 0`,
/// scaled so that `b·v = 1`. `None` when `v` lies in the image of `a`.
pub fn canonical_functional(a: &Matrix, v: &[Rational]) -> Option<Vec<Rational>> {
    left_kernel(a).basis_vectors().into_iter().find_map(|b| {
        let val = dot(&b, v);
        let inv = val.recip()?;
        Some(b.iter().map(|c| c * &inv).collect())
    })
}

/// Checks either kind of certificate.
pub fn verify(g: &LieAlgebra, ld: &LeviData, x: &Element, cert: &Certificate) -> Result<(), Rejection> {
    match cert {
        Certificate::Embedding(c) => verify_embedding(g, ld, x, c),
        Certificate::Section(c) => verify_section(g, ld, x, c),
    }
}

/// Accepts iff applying the conjugators level by level moves `x` to
/// `cert.final_element`, a nonzero element of the Levi subalgebra.
pub fn verify_embedding(
    g: &LieAlgebra,
    ld: &LeviData,
    x: &Element,
    cert: &EmbeddingCert,
) -> Result<(), Rejection> {
    let levels = prepare(g, ld, x)?;
    let nonzero = levels.iter().filter(|l| l.quotient_dim() > 0).count();
    if cert.conjugators.len() != nonzero {
        return Err(Rejection::ConjugatorCount {
            expected: nonzero,
            found: cert.conjugators.len(),
        });
    }
    check_len("final element", g.dim(), cert.final_element.dim())?;
    let current = replay(g, ld, &levels, x, &cert.conjugators)?;
    if current != cert.final_element {
        return Err(Rejection::FinalMismatch);
    }
    if !ld.levi().contains(current.coords()) {
        return Err(Rejection::FinalNotInLevi);
    }
    if current.is_zero() {
        return Err(Rejection::FinalZero);
    }
    Ok(())
}

/// Accepts iff, after the conjugations for the levels above, `phi` vanishes
/// on the image of the induced action at `cert.level` and is 1 on the
/// projected element (and is the canonical such functional).
pub fn verify_section(
    g: &LieAlgebra,
    ld: &LeviData,
    x: &Element,
    cert: &SectionCert,
) -> Result<(), Rejection> {
    let levels = prepare(g, ld, x)?;
    let k = cert.level;
    if k >= levels.len() || levels[k].quotient_dim() == 0 {
        return Err(Rejection::LevelOutOfRange { level: k, levels: levels.len() });
    }
    if cert.conjugators.len() != k {
        return Err(Rejection::ConjugatorCount { expected: k, found: cert.conjugators.len() });
    }
    let current = replay(g, ld, &levels, x, &cert.conjugators)?;
    let level = &levels[k];
    let (x_l, x_n) = split(ld, &current)?;
    let v = project(level, &x_n).map_err(|_| Rejection::TooShallow { level: k })?;
    let a = induced_action(g, level, &x_l).map_err(internal)?;
    check_len("phi", level.quotient_dim(), cert.phi.len())?;

    if !is_zero_vec(&a.vec_mul(&cert.phi)) {
        return Err(Rejection::PhiNotAnnihilating { level: k });
    }
    let value = dot(&cert.phi, &v);
    if value.is_zero() {
        return Err(Rejection::PhiMissesElement { level: k });
    }
    if !value.is_one() {
        return Err(Rejection::PhiNotNormalized { level: k, value });
    }
    if canonical_functional(&a, &v).as_deref() != Some(&cert.phi[..]) {
        return Err(Rejection::PhiNotCanonical { level: k });
    }
    Ok(())
}

fn prepare(g: &LieAlgebra, ld: &LeviData, x: &Element) -> Result<Vec<FlagLevel>, Rejection> {
    let invalid = |e: &dyn fmt::Display| Rejection::InvalidInput(e.to_string());
    validate_algebra(g).map_err(|e| invalid(&e))?;
    validate_levi(g, ld).map_err(|e| invalid(&e))?;
    if x.dim() != g.dim() {
        return Err(Rejection::InvalidInput(format!(
            "element has dimension {}, algebra has dimension {}",
            x.dim(),
            g.dim()
        )));
    }
    if x.is_zero() {
        return Err(Rejection::InvalidInput("element is zero".into()));
    }
    if !is_nilpotent_element(g, ld, x) {
        return Err(Rejection::InvalidInput("element is not nilpotent".into()));
    }
    derived_series(g, ld.nilradical()).map_err(|e| invalid(&e))
}

/// Applies the conjugators to the nonzero-quotient levels in order,
/// checking depth and canonicality at every step.
fn replay(
    g: &LieAlgebra,
    ld: &LeviData,
    levels: &[FlagLevel],
    x: &Element,
    conjugators: &[Element],
) -> Result<Element, Rejection> {
    let mut current = x.clone();
    let steps = levels.iter().filter(|l| l.quotient_dim() > 0);
    for (level, y) in steps.zip(conjugators) {
        let k = level.index;
        check_len("conjugator", g.dim(), y.dim())?;
        let (x_l, x_n) = split(ld, &current)?;
        let v = project(level, &x_n).map_err(|_| Rejection::TooShallow { level: k })?;
        let y_bar = project(level, y).map_err(|_| Rejection::ConjugatorNotRepresentative { level: k })?;
        if level.lift(&y_bar) != *y {
            return Err(Rejection::ConjugatorNotRepresentative { level: k });
        }
        let a = induced_action(g, level, &x_l).map_err(internal)?;
        if a.mul_vec(&y_bar) != v {
            return Err(Rejection::ConjugatorDoesNotClear { level: k });
        }
        if solve(&a, &v).map_err(internal)?.as_ref() != Some(&y_bar) {
            return Err(Rejection::ConjugatorNotCanonical { level: k });
        }
        let u = exp_nilpotent(&g.ad_matrix(y)).map_err(internal)?;
        current = current.apply(&u);
        let (_, x_n) = split(ld, &current)?;
        if !level.next.contains(x_n.coords()) {
            return Err(Rejection::ConjugatorDoesNotClear { level: k });
        }
    }
    Ok(current)
}

fn split(ld: &LeviData, x: &Element) -> Result<(Element, Element), Rejection> {
    decompose(ld, x).map_err(internal)
}

fn check_len(what: &str, expected: usize, found: usize) -> Result<(), Rejection> {
    if expected == found {
        Ok(())
    } else {
        Err(Rejection::Shape { what: what.to_string(), expected, found })
    }
}

fn internal(e: impl fmt::Display) -> Rejection {
    Rejection::InvalidInput(e.to_string())
}
