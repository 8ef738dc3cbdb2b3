//! Acceptance criteria, one line each. Runs as a plain binary so the lines
//! are always printed; exits nonzero if any criterion fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use affinity_certify::{oracle_decide_class2, verify, Certificate};
use affinity_cli::ProblemInstance;
use affinity_engine::{conjugate_by_exp, decide, VerdictKind};
use affinity_testkit::{
    change_basis, corpus, nonzero_rational, random_class2_instance, random_instance,
    random_invertible, random_nilradical_element, random_sl2_nilpotent, random_sl3_nilpotent,
    random_unimodular, random_unipotent_instance, sl2, sl3, Instance,
};
use exact_linalg::{exp_nilpotent, image, q, Matrix, Subspace};
use lie_core::LeviData;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn kind(inst: &Instance) -> Result<VerdictKind, String> {
    decide(&inst.algebra, &inst.levi, &inst.element)
        .map(|v| v.kind)
        .map_err(|e| format!("{}: {e}", inst.name))
}

fn expected_kind(affine: bool) -> VerdictKind {
    if affine {
        VerdictKind::Affine
    } else {
        VerdictKind::NotAffine
    }
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

fn corpus_correctness() -> Outcome {
    let expected = corpus();
    let start = Instant::now();
    let mut ok = 0;
    let mut failures = Vec::new();
    for (inst, affine) in &expected {
        let path = corpus_dir().join(format!("{}.json", inst.name));
        let result = ProblemInstance::load(&path)
            .map_err(|e| e.to_string())
            .and_then(|p| {
                if (&p.algebra, &p.levi_data, &p.element) != (&inst.algebra, &inst.levi, &inst.element) {
                    return Err("file differs from the reference instance".to_string());
                }
                decide(&p.algebra, &p.levi_data, &p.element).map_err(|e| e.to_string())
            });
        match result {
            Ok(v) if v.kind == expected_kind(*affine) => ok += 1,
            Ok(v) => failures.push(format!("{}: got {}", inst.name, v.kind)),
            Err(e) => failures.push(format!("{}: {e}", inst.name)),
        }
    }
    let elapsed = start.elapsed();
    let pass = failures.is_empty() && expected.len() >= 6 && elapsed < Duration::from_secs(1);
    outcome(
        pass,
        format!("{ok}/{} expected verdicts in {} (limit 1s) {}", expected.len(), secs(elapsed), failures.join("; ")),
    )
}

fn reductive_base_case(rng: &mut ChaCha8Rng) -> Outcome {
    let mut ok = 0;
    let mut total = 0;
    for (g, sample) in [
        (sl2(), random_sl2_nilpotent as fn(&mut ChaCha8Rng) -> _),
        (sl3(), random_sl3_nilpotent as fn(&mut ChaCha8Rng) -> _),
    ] {
        let d = g.dim();
        let ld = LeviData::new(Subspace::full(d), Subspace::zero(d)).unwrap();
        for _ in 0..100 {
            total += 1;
            let inst = Instance::new("reductive", g.clone(), ld.clone(), sample(rng));
            if kind(&inst) == Ok(VerdictKind::NotAffine) {
                ok += 1;
            }
        }
    }
    outcome(ok == total, format!("{ok}/{total} NOT_AFFINE (100 sl2 + 100 sl3)"))
}

fn unipotent_case(rng: &mut ChaCha8Rng) -> Outcome {
    let ok = (0..50)
        .filter(|_| kind(&random_unipotent_instance(rng, 6)) == Ok(VerdictKind::Affine))
        .count();
    outcome(ok == 50, format!("{ok}/50 AFFINE"))
}

/// Every single-rational +1 mutation, plus a shifted section level.
fn tampered(cert: &Certificate) -> Vec<Certificate> {
    let mut out: Vec<Certificate> = (0..cert.field_count())
        .map(|i| cert.map_field(i, |r| r + q(1, 1)))
        .collect();
    if let Certificate::Section(c) = cert {
        let mut shifted = c.clone();
        shifted.level += 1;
        out.push(Certificate::Section(shifted));
    }
    out
}

fn certificate_soundness(rng: &mut ChaCha8Rng) -> Outcome {
    let mut instances: Vec<Instance> = corpus().into_iter().map(|(i, _)| i).collect();
    instances.extend((0..100).map(|_| random_instance(rng)));
    let (mut passed, mut rejected, mut tampers) = (0, 0, 0);
    let mut failures = Vec::new();
    for inst in &instances {
        let (g, ld, x) = (&inst.algebra, &inst.levi, &inst.element);
        let cert = match decide(g, ld, x) {
            Ok(v) => v.certificate,
            Err(e) => {
                failures.push(format!("{}: {e}", inst.name));
                continue;
            }
        };
        match verify(g, ld, x, &cert) {
            Ok(()) => passed += 1,
            Err(e) => failures.push(format!("{}: {e}", inst.name)),
        }
        for t in tampered(&cert) {
            tampers += 1;
            if verify(g, ld, x, &t).is_err() {
                rejected += 1;
            } else if failures.len() < 5 {
                failures.push(format!("{}: tampered certificate accepted", inst.name));
            }
        }
    }
    let n = instances.len();
    outcome(
        passed == n && rejected == tampers && failures.is_empty(),
        format!(
            "{passed}/{n} certificates verified, {rejected}/{tampers} tampered certificates rejected {}",
            failures.join("; ")
        ),
    )
}

fn oracle_equivalence(rng: &mut ChaCha8Rng) -> Outcome {
    let start = Instant::now();
    let total = 60;
    let (mut agree, mut affine) = (0, 0);
    let mut failures = Vec::new();
    for _ in 0..total {
        let inst = random_class2_instance(rng);
        let oracle = oracle_decide_class2(&inst.algebra, &inst.levi, &inst.element);
        match (kind(&inst), oracle) {
            (Ok(a), Ok(b)) if a == b => {
                agree += 1;
                affine += usize::from(a == VerdictKind::Affine);
            }
            (a, b) => failures.push(format!("{}: decide {a:?}, oracle {b:?}", inst.name)),
        }
    }
    let elapsed = start.elapsed();
    outcome(
        agree == total && elapsed < Duration::from_secs(30),
        format!(
            "{agree}/{total} agree ({affine} AFFINE, {} NOT_AFFINE) in {} (limit 30s) {}",
            agree - affine,
            secs(elapsed),
            failures.join("; ")
        ),
    )
}

fn random_nilpotent_matrix(rng: &mut ChaCha8Rng) -> Matrix {
    let n = rng.gen_range(1..=8);
    let u = Matrix::from_fn(n, n, |i, j| {
        if j > i && rng.gen_bool(0.5) {
            q(rng.gen_range(-3..=3), rng.gen_range(1..=2))
        } else {
            q(0, 1)
        }
    });
    let p = random_invertible(rng, n);
    &(&p * &u) * &p.inverse().unwrap()
}

fn bridge_invariant(rng: &mut ChaCha8Rng) -> Outcome {
    let ok = (0..200)
        .filter(|_| {
            let n = random_nilpotent_matrix(rng);
            let shifted = &exp_nilpotent(&n).unwrap() - &Matrix::identity(n.rows());
            image(&shifted) == image(&n)
        })
        .count();
    outcome(ok == 200, format!("{ok}/200 images equal (sizes 1..8)"))
}

fn invariance_suite(rng: &mut ChaCha8Rng) -> Outcome {
    let (mut ok, mut total) = (0, 0);
    let mut failures = Vec::new();
    let mut check = |label: &str, base: VerdictKind, inst: &Instance| {
        total += 1;
        match kind(inst) {
            Ok(k) if k == base => ok += 1,
            other => failures.push(format!("{} ({label}): {other:?}", inst.name)),
        }
    };
    for (inst, affine) in corpus() {
        let base = expected_kind(affine);
        for _ in 0..20 {
            let y = random_nilradical_element(rng, &inst);
            let moved = conjugate_by_exp(&inst.algebra, &y, &inst.element).unwrap();
            check("conjugation", base, &inst.with_element(moved));
        }
        for _ in 0..5 {
            let c = nonzero_rational(rng);
            check("scaling", base, &inst.with_element(inst.element.scale(&c)));
        }
        for _ in 0..5 {
            let p = if rng.gen_bool(0.5) {
                random_unimodular(rng, inst.algebra.dim())
            } else {
                random_invertible(rng, inst.algebra.dim())
            };
            check("change of basis", base, &change_basis(&inst, &p));
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{ok}/{total} verdicts unchanged (20 conjugations, 5 scalings, 5 bases per corpus instance) {}",
            failures.join("; ")
        ),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut files = 0;
    let mut mismatches = Vec::new();
    for (inst, _) in corpus() {
        let problem = corpus_dir().join(format!("{}.json", inst.name));
        for format in ["text", "json"] {
            let run = |tag: &str| {
                let cert = dir.path().join(format!("{}.{format}.{tag}.cert", inst.name));
                let out = Command::new(env!("CARGO_BIN_EXE_affinity"))
                    .args(["decide", "--trace", "--format", format, "--cert"])
                    .arg(&cert)
                    .arg(&problem)
                    .output()
                    .unwrap();
                (out.status.code(), out.stdout, std::fs::read(&cert).unwrap_or_default())
            };
            let first = run("a");
            let second = run("b");
            files += 1;
            if first != second || first.0 != Some(0) || first.2.is_empty() {
                mismatches.push(format!("{} ({format})", inst.name));
            }
        }
    }
    outcome(
        mismatches.is_empty(),
        format!("{}/{files} runs byte-identical (stdout and certificate) {}", files - mismatches.len(), mismatches.join("; ")),
    )
}

type Criterion = Box<dyn FnOnce(&mut ChaCha8Rng) -> Outcome>;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(20241019);
    let criteria: Vec<(&str, Criterion)> = vec![
        ("corpus correctness", Box::new(|_| corpus_correctness())),
        ("reductive base case", Box::new(reductive_base_case)),
        ("unipotent case", Box::new(unipotent_case)),
        ("certificate soundness", Box::new(certificate_soundness)),
        ("oracle equivalence", Box::new(oracle_equivalence)),
        ("bridge invariant", Box::new(bridge_invariant)),
        ("invariance suite", Box::new(invariance_suite)),
        ("determinism", Box::new(|_| determinism())),
    ];
    let mut all = true;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let result = run(&mut rng);
        all &= result.pass;
        let status = if result.pass { "PASS" } else { "FAIL" };
        println!("acceptance {} [{status}] {name}: {}", i + 1, result.detail.trim_end());
    }
    if !all {
        std::process::exit(1);
    }
}
