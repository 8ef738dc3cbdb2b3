use std::fmt;

use exact_linalg::Rational;
use lie_core::Element;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerdictKind {
    #[serde(rename = "AFFINE")]
    Affine,
    #[serde(rename = "NOT_AFFINE")]
    NotAffine,
}

impl fmt::Display for VerdictKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VerdictKind::Affine => "AFFINE",
            VerdictKind::NotAffine => "NOT_AFFINE",
        })
    }
}

/// Witness that `H` lies in a reductive subgroup: conjugating the input by
/// `exp(ad y_m) ∘ … ∘ exp(ad y_1)` lands in the Levi subalgebra.
///
/// `conjugators[k]` lies in the `k`-th derived subalgebra of the nilradical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingCert {
    pub conjugators: Vec<Element>,
    #[serde(rename = "final")]
    pub final_element: Element,
}

/// Witness of a section at derived level `level`: after the conjugations
/// for the levels above, `phi` vanishes on the image of the induced action
/// and takes the value 1 on the projected element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SectionCert {
    pub level: usize,
    pub conjugators: Vec<Element>,
    pub phi: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    Embedding(EmbeddingCert),
    Section(SectionCert),
}

impl Certificate {
    /// The verdict this certificate witnesses.
    pub fn kind(&self) -> VerdictKind {
        match self {
            Certificate::Embedding(_) => VerdictKind::NotAffine,
            Certificate::Section(_) => VerdictKind::Affine,
        }
    }

    pub fn conjugators(&self) -> &[Element] {
        match self {
            Certificate::Embedding(c) => &c.conjugators,
            Certificate::Section(c) => &c.conjugators,
        }
    }

    /// Number of rationals in the certificate: conjugator coordinates, then
    /// the final element or functional.
    pub fn field_count(&self) -> usize {
        self.fields().len()
    }

    fn fields(&self) -> Vec<Rational> {
        let mut out: Vec<Rational> = self
            .conjugators()
            .iter()
            .flat_map(|y| y.coords().iter().cloned())
            .collect();
        match self {
            Certificate::Embedding(c) => out.extend(c.final_element.coords().iter().cloned()),
            Certificate::Section(c) => out.extend(c.phi.iter().cloned()),
        }
        out
    }

    /// Copy with the `index`-th rational (in [`field_count`](Self::field_count)
    /// order) replaced by `f` of its old value.
    pub fn map_field(&self, index: usize, f: impl FnOnce(&Rational) -> Rational) -> Certificate {
        let mut fields = self.fields();
        assert!(index < fields.len(), "field index {index} out of range");
        fields[index] = f(&fields[index]);
        let mut rest = fields.into_iter();
        let mut take = |n: usize| -> Vec<Rational> { rest.by_ref().take(n).collect() };
        let conjugators: Vec<Element> = self
            .conjugators()
            .iter()
            .map(|y| Element::new(take(y.dim())))
            .collect();
        match self {
            Certificate::Embedding(c) => Certificate::Embedding(EmbeddingCert {
                conjugators,
                final_element: Element::new(take(c.final_element.dim())),
            }),
            Certificate::Section(c) => Certificate::Section(SectionCert {
                level: c.level,
                conjugators,
                phi: take(c.phi.len()),
            }),
        }
    }
}
