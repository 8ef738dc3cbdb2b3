//! Human-readable rendering of elements, vectors and traces.

use std::fmt::Write as _;

use affinity_engine::{Branch, Certificate, Verdict, VerdictKind};
use exact_linalg::Rational;
use lie_core::{Element, LieAlgebra};

use crate::instance::ProblemInstance;

/// `e + 2 u1 - 1/2 h`, using the basis names of `g`.
pub fn element(g: &LieAlgebra, x: &Element) -> String {
    let mut out = String::new();
    for (c, name) in x.coords().iter().zip(g.basis_names()) {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            out.push_str(if neg { "-" } else { "" });
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            write!(out, "{abs} ").unwrap();
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// `(1, 0, -1/2)`.
pub fn vector(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

/// Per-level account of a decision, one line per step.
pub fn narrative(inst: &ProblemInstance, verdict: &Verdict) -> String {
    let g = &inst.algebra;
    let ld = &inst.levi_data;
    let mut out = String::new();
    writeln!(
        out,
        "instance {}: dim g = {}, dim l = {}, dim n = {}",
        inst.name,
        g.dim(),
        ld.levi().dim(),
        ld.nilradical().dim()
    )
    .unwrap();
    writeln!(out, "x = {}", element(g, &inst.element)).unwrap();
    if verdict.trace.is_empty() {
        writeln!(out, "base case: no nonzero quotient of the nilradical, x lies in l").unwrap();
    }
    for rec in &verdict.trace {
        let k = rec.level;
        write!(out, "level {k}: dim V_{k} = {}, rank A_{k} = {}, ", rec.quotient_dim(), rec.rank())
            .unwrap();
        match &rec.branch {
            Branch::Conjugate { y, .. } => writeln!(
                out,
                "v = {} in Im A_{k} -> CONJUGATE by y = {}",
                vector(&rec.vbar),
                element(g, y)
            ),
            Branch::Section { phi } => writeln!(
                out,
                "v = {} not in Im A_{k} -> SECTION with phi = {}",
                vector(&rec.vbar),
                vector(phi)
            ),
        }
        .unwrap();
    }
    match (&verdict.kind, &verdict.certificate) {
        (VerdictKind::NotAffine, Certificate::Embedding(c)) => writeln!(
            out,
            "final element {} lies in l: H is conjugate into the Levi factor, G/H is not affine",
            element(g, &c.final_element)
        ),
        (_, Certificate::Section(c)) => writeln!(
            out,
            "phi vanishes on Im A_{0} and not on v at level {0}: a section exists, G/H is affine",
            c.level
        ),
        _ => Ok(()),
    }
    .unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use exact_linalg::q;

    #[test]
    fn element_names() {
        let g = LieAlgebra::abelian(vec!["e".into(), "h".into(), "u1".into()]).unwrap();
        let x = Element::new(vec![q(1, 1), q(-1, 2), q(2, 1)]);
        assert_eq!(element(&g, &x), "e - 1/2 h + 2 u1");
        assert_eq!(element(&g, &Element::new(vec![q(-1, 1), q(0, 1), q(0, 1)])), "-e");
        assert_eq!(element(&g, &Element::zero(3)), "0");
        assert_eq!(vector(&[q(1, 1), q(-1, 2)]), "(1, -1/2)");
    }
}
