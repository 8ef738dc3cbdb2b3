//! Named Lie algebras, problem instances and random generators shared by the
//! test suites of the workspace.

use exact_linalg::{q, solve, Matrix, Rational, Subspace};
use lie_core::{Element, LeviData, LieAlgebra};
use rand::Rng;

/// An algebra, its Levi splitting and an element generating `H`.
#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub algebra: LieAlgebra,
    pub levi: LeviData,
    pub element: Element,
}

impl Instance {
    pub fn new(name: &str, algebra: LieAlgebra, levi: LeviData, element: Element) -> Self {
        Instance {
            name: name.to_string(),
            algebra,
            levi,
            element,
        }
    }

    pub fn with_element(&self, element: Element) -> Self {
        Instance {
            element,
            ..self.clone()
        }
    }
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

/// Structure constants of the matrix Lie algebra spanned by `basis`, which
/// must be closed under the commutator.
pub fn from_matrix_basis(basis_names: Vec<String>, basis: &[Matrix]) -> LieAlgebra {
    let d = basis.len();
    let cols: Vec<Vec<Rational>> = basis.iter().map(|m| m.entries().to_vec()).collect();
    let len = basis.first().map_or(0, |m| m.entries().len());
    let system = Matrix::from_cols(&cols, len).unwrap();
    LieAlgebra::from_fn(basis_names, |i, j| {
        let c = basis[i].commutator(&basis[j]);
        solve(&system, c.entries())
            .unwrap()
            .expect("matrix basis is closed under the commutator")
    })
    .unwrap_or_else(|e| panic!("invalid matrix basis of size {d}: {e}"))
}

fn unit(n: usize, i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    m[(i, j)] = q(1, 1);
    m
}

/// sl2 in the basis (e, h, f): `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
pub fn sl2() -> LieAlgebra {
    LieAlgebra::new(
        names(&["e", "h", "f"]),
        [
            ((0, 1), vec![(0, q(-2, 1))]),
            ((0, 2), vec![(1, q(1, 1))]),
            ((1, 2), vec![(2, q(-2, 1))]),
        ],
    )
    .unwrap()
}

/// sl3 in the basis (E12, E13, E23, E21, E31, E32, H1, H2).
pub fn sl3() -> LieAlgebra {
    let (n, b) = sl3_matrices();
    from_matrix_basis(n, &b)
}

fn sl3_matrices() -> (Vec<String>, Vec<Matrix>) {
    let mut h1 = unit(3, 0, 0);
    h1[(1, 1)] = q(-1, 1);
    let mut h2 = unit(3, 1, 1);
    h2[(2, 2)] = q(-1, 1);
    (
        names(&["E12", "E13", "E23", "E21", "E31", "E32", "H1", "H2"]),
        vec![
            unit(3, 0, 1),
            unit(3, 0, 2),
            unit(3, 1, 2),
            unit(3, 1, 0),
            unit(3, 2, 0),
            unit(3, 2, 1),
            h1,
            h2,
        ],
    )
}

/// Coordinates of a traceless 3×3 matrix in the [`sl3`] basis.
pub fn sl3_coords(m: &Matrix) -> Element {
    let (_, basis) = sl3_matrices();
    let cols: Vec<Vec<Rational>> = basis.iter().map(|b| b.entries().to_vec()).collect();
    let system = Matrix::from_cols(&cols, 9).unwrap();
    Element::new(solve(&system, m.entries()).unwrap().expect("matrix is traceless"))
}

/// Heisenberg algebra (p, q, z) with `[p, q] = z`.
pub fn heisenberg() -> LieAlgebra {
    LieAlgebra::new(names(&["p", "q", "z"]), [((0, 1), vec![(2, q(1, 1))])]).unwrap()
}

/// Matrices of e, h, f on the irreducible module `V_m` with basis
/// `u_i = x^(m-i) y^i`: `e u_i = i u_(i-1)`, `f u_i = (m-i) u_(i+1)`,
/// `h u_i = (m-2i) u_i`.
pub fn sl2_rep(m: usize) -> [Matrix; 3] {
    let d = m + 1;
    let e = Matrix::from_fn(d, d, |r, c| if c >= 1 && r == c - 1 { q(c as i64, 1) } else { q(0, 1) });
    let f = Matrix::from_fn(d, d, |r, c| if r == c + 1 { q((m - c) as i64, 1) } else { q(0, 1) });
    let h = Matrix::from_fn(d, d, |r, c| if r == c { q(m as i64 - 2 * r as i64, 1) } else { q(0, 1) });
    [e, h, f]
}

/// `sl2 ⋉ V_m` with `V_m` abelian, basis (e, h, f, u0, …, um).
pub fn sl2_module(m: usize) -> LieAlgebra {
    let d = m + 2;
    let embed = |a: &Matrix| Matrix::from_fn(d, d, |r, c| if r < m + 1 && c < m + 1 { a[(r, c)].clone() } else { q(0, 1) });
    let [e, h, f] = sl2_rep(m);
    let mut basis = vec![embed(&e), embed(&h), embed(&f)];
    let mut basis_names = names(&["e", "h", "f"]);
    for i in 0..=m {
        basis.push(unit(d, i, m + 1));
        basis_names.push(format!("u{i}"));
    }
    from_matrix_basis(basis_names, &basis)
}

/// `sl2 ⋉ (V1 ⊕ C)` where `[u0, u1] = z` makes the radical a Heisenberg algebra.
/// Basis (e, h, f, u0, u1, z).
pub fn sl2_heisenberg() -> LieAlgebra {
    LieAlgebra::new(
        names(&["e", "h", "f", "u0", "u1", "z"]),
        [
            ((0, 1), vec![(0, q(-2, 1))]),
            ((0, 2), vec![(1, q(1, 1))]),
            ((1, 2), vec![(2, q(-2, 1))]),
            ((0, 4), vec![(3, q(1, 1))]),
            ((1, 3), vec![(3, q(1, 1))]),
            ((1, 4), vec![(4, q(-1, 1))]),
            ((2, 3), vec![(4, q(1, 1))]),
            ((3, 4), vec![(5, q(1, 1))]),
        ],
    )
    .unwrap()
}

/// `gl2 ⋉ V1`: sl2 plus a central torus `t` acting on V1 by scalars.
/// Basis (e, h, f, t, u0, u1).
pub fn gl2_v1() -> LieAlgebra {
    LieAlgebra::new(
        names(&["e", "h", "f", "t", "u0", "u1"]),
        [
            ((0, 1), vec![(0, q(-2, 1))]),
            ((0, 2), vec![(1, q(1, 1))]),
            ((1, 2), vec![(2, q(-2, 1))]),
            ((0, 5), vec![(4, q(1, 1))]),
            ((1, 4), vec![(4, q(1, 1))]),
            ((1, 5), vec![(5, q(-1, 1))]),
            ((2, 4), vec![(5, q(1, 1))]),
            ((3, 4), vec![(4, q(1, 1))]),
            ((3, 5), vec![(5, q(1, 1))]),
        ],
    )
    .unwrap()
}

/// Torus `t` acting on a Heisenberg algebra with weights (1, -1, 0).
/// Basis (t, a, b, z).
pub fn torus_heisenberg() -> LieAlgebra {
    LieAlgebra::new(
        names(&["t", "a", "b", "z"]),
        [
            ((0, 1), vec![(1, q(1, 1))]),
            ((0, 2), vec![(2, q(-1, 1))]),
            ((1, 2), vec![(3, q(1, 1))]),
        ],
    )
    .unwrap()
}

/// Standard filiform algebra of dimension 4: `[x, y_i] = y_(i+1)`.
/// Basis (x, y1, y2, y3); nilpotency class 3.
pub fn filiform4() -> LieAlgebra {
    LieAlgebra::new(
        names(&["x", "y1", "y2", "y3"]),
        [((0, 1), vec![(2, q(1, 1))]), ((0, 2), vec![(3, q(1, 1))])],
    )
    .unwrap()
}

fn levi_prefix(dim: usize, levi_dim: usize) -> LeviData {
    let l: Vec<usize> = (0..levi_dim).collect();
    let n: Vec<usize> = (levi_dim..dim).collect();
    LeviData::from_indices(dim, &l, &n).unwrap()
}

/// The named instances bundled with the command-line tool, with their
/// expected verdicts (`true` for affine).
pub fn corpus() -> Vec<(Instance, bool)> {
    let sl2_v1 = sl2_module(1);
    vec![
        (
            Instance::new("sl2_e", sl2(), levi_prefix(3, 3), Element::from_i64(&[1, 0, 0])),
            false,
        ),
        (
            Instance::new("heisenberg_p", heisenberg(), levi_prefix(3, 0), Element::from_i64(&[1, 0, 0])),
            true,
        ),
        (
            Instance::new("heisenberg_z", heisenberg(), levi_prefix(3, 0), Element::from_i64(&[0, 0, 1])),
            true,
        ),
        (
            Instance::new(
                "sl2_semidirect_v1",
                sl2_v1.clone(),
                levi_prefix(5, 3),
                Element::from_i64(&[1, 0, 0, 0, 1]),
            ),
            true,
        ),
        (
            Instance::new(
                "sl2_semidirect_v1_conjugate",
                sl2_v1,
                levi_prefix(5, 3),
                Element::from_i64(&[1, 0, 0, 1, 0]),
            ),
            false,
        ),
        (
            Instance::new("filiform4_x", filiform4(), levi_prefix(4, 0), Element::from_i64(&[1, 0, 0, 0])),
            true,
        ),
        (
            Instance::new(
                "sl2_heisenberg_center",
                sl2_heisenberg(),
                levi_prefix(6, 3),
                Element::from_i64(&[1, 0, 0, 0, 0, 1]),
            ),
            true,
        ),
        (
            Instance::new(
                "sl3_regular",
                sl3(),
                levi_prefix(8, 8),
                Element::from_i64(&[1, 0, 1, 0, 0, 0, 0, 0]),
            ),
            false,
        ),
    ]
}

pub fn small_rational(rng: &mut impl Rng) -> Rational {
    q(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

pub fn nonzero_rational(rng: &mut impl Rng) -> Rational {
    loop {
        let r = small_rational(rng);
        if !r.is_zero() {
            return r;
        }
    }
}

/// Random invertible integer matrix: a product of elementary shears and a
/// random permutation.
pub fn random_unimodular(rng: &mut impl Rng, n: usize) -> Matrix {
    let mut m = Matrix::identity(n);
    if n < 2 {
        return m;
    }
    for _ in 0..3 * n {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = rng.gen_range(-2i64..=2);
        let mut shear = Matrix::identity(n);
        shear[(i, j)] = q(c, 1);
        m = &m * &shear;
    }
    m
}

/// Random invertible rational matrix, with entries small enough to keep
/// coefficient growth manageable.
pub fn random_invertible(rng: &mut impl Rng, n: usize) -> Matrix {
    loop {
        let m = Matrix::from_fn(n, n, |i, j| {
            if i == j || rng.gen_bool(0.4) {
                q(rng.gen_range(-2..=2), rng.gen_range(1..=2))
            } else {
                q(0, 1)
            }
        });
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// Random element of a subspace with small rational coordinates.
pub fn random_in(rng: &mut impl Rng, s: &Subspace) -> Element {
    let mut coords = vec![q(0, 1); s.ambient_dim()];
    for v in s.basis_vectors() {
        let c = small_rational(rng);
        for (x, b) in coords.iter_mut().zip(&v) {
            *x += &c * b;
        }
    }
    Element::new(coords)
}

/// Re-expresses algebra, Levi data and element in the basis given by the
/// columns of the invertible matrix `p`.
pub fn change_basis(inst: &Instance, p: &Matrix) -> Instance {
    let inv = p.inverse().expect("change of basis must be invertible");
    let g = &inst.algebra;
    let n = g.dim();
    let cols: Vec<Element> = (0..n).map(|j| Element::new(p.col(j))).collect();
    let algebra = LieAlgebra::from_fn(g.basis_names().to_vec(), |i, j| {
        inv.mul_vec(g.bracket(&cols[i], &cols[j]).unwrap().coords())
    })
    .unwrap();
    let levi = LeviData::new(inst.levi.levi().map(&inv), inst.levi.nilradical().map(&inv)).unwrap();
    Instance {
        name: format!("{}*", inst.name),
        algebra,
        levi,
        element: inst.element.apply(&inv),
    }
}

/// Random nonzero nilpotent element of sl2 in the (e, h, f) basis: a scaled
/// conjugate of `e` by a random element of SL2(Z).
pub fn random_sl2_nilpotent(rng: &mut impl Rng) -> Element {
    let g = random_unimodular(rng, 2);
    let inv = g.inverse().unwrap();
    let x = &(&g * &unit(2, 0, 1)) * &inv;
    let c = nonzero_rational(rng);
    // [[a, b], [c, -a]] = b e + a h + c f
    Element::new(vec![x[(0, 1)].clone(), x[(0, 0)].clone(), x[(1, 0)].clone()]).scale(&c)
}

/// Random nonzero nilpotent element of sl3: a conjugate of a scaled Jordan
/// form (either one or two blocks of size > 1).
pub fn random_sl3_nilpotent(rng: &mut impl Rng) -> Element {
    let mut jordan = unit(3, 0, 1);
    if rng.gen_bool(0.5) {
        jordan[(1, 2)] = q(1, 1);
    }
    let g = random_unimodular(rng, 3);
    let inv = g.inverse().unwrap();
    let x = (&(&g * &jordan) * &inv).scale(&nonzero_rational(rng));
    sl3_coords(&x)
}

/// Random nilpotent Lie algebra of dimension between 1 and `max_dim` (at most 6):
/// the matrix Lie algebra generated by random strictly upper-triangular 4×4
/// matrices, re-expressed in a random basis.
pub fn random_nilpotent_algebra(rng: &mut impl Rng, max_dim: usize) -> LieAlgebra {
    assert!((1..=6).contains(&max_dim));
    loop {
        let size = rng.gen_range(2..=4);
        let gens = rng.gen_range(1..=3);
        let mut span: Vec<Matrix> = Vec::new();
        for _ in 0..gens {
            let m = Matrix::from_fn(size, size, |i, j| {
                if j > i && rng.gen_bool(0.6) {
                    q(rng.gen_range(-2..=2), 1)
                } else {
                    q(0, 1)
                }
            });
            span.push(m);
        }
        let basis = close_under_commutator(span);
        if basis.is_empty() || basis.len() > max_dim {
            continue;
        }
        let d = basis.len();
        let basis_names = (0..d).map(|i| format!("n{i}")).collect();
        let g = from_matrix_basis(basis_names, &basis);
        let inst = Instance::new("nil", g, levi_prefix(d, 0), Element::zero(d));
        return change_basis(&inst, &random_unimodular(rng, d)).algebra;
    }
}

/// Independent matrices spanning the Lie closure of `gens`.
fn close_under_commutator(gens: Vec<Matrix>) -> Vec<Matrix> {
    let len = gens.first().map_or(0, |m| m.entries().len());
    let mut basis: Vec<Matrix> = Vec::new();
    let rank_of = |b: &[Matrix]| {
        let rows: Vec<Vec<Rational>> = b.iter().map(|m| m.entries().to_vec()).collect();
        Subspace::span(len, &rows).unwrap().dim()
    };
    let mut queue = gens;
    while let Some(m) = queue.pop() {
        let mut candidate = basis.clone();
        candidate.push(m.clone());
        if rank_of(&candidate) > basis.len() {
            for b in &basis {
                queue.push(b.commutator(&m));
            }
            basis.push(m);
        }
    }
    basis
}

/// Random nilpotent algebra of class at most 2 on `V ⊕ D`: brackets of `V`
/// land in the center `D`, everything else commutes.
pub fn random_class2_algebra(rng: &mut impl Rng, v_dim: usize, d_dim: usize) -> LieAlgebra {
    let dim = v_dim + d_dim;
    let basis_names = (0..dim)
        .map(|i| if i < v_dim { format!("v{i}") } else { format!("d{}", i - v_dim) })
        .collect();
    LieAlgebra::from_fn(basis_names, |_, j| {
        let mut out = vec![q(0, 1); dim];
        if j < v_dim {
            for c in &mut out[v_dim..] {
                if rng.gen_bool(0.5) {
                    *c = q(rng.gen_range(-2..=2), 1);
                }
            }
        }
        out
    })
    .unwrap()
}

/// Random instance with trivial Levi factor and a nonzero element.
pub fn random_unipotent_instance(rng: &mut impl Rng, max_dim: usize) -> Instance {
    let g = random_nilpotent_algebra(rng, max_dim);
    let d = g.dim();
    let ld = levi_prefix(d, 0);
    let x = nonzero_in(rng, ld.nilradical());
    Instance::new("random_unipotent", g, ld, x)
}

fn nonzero_in(rng: &mut impl Rng, s: &Subspace) -> Element {
    loop {
        let x = random_in(rng, s);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Random element of the nilradical conjugated into place: `exp(ad y) x_l`.
fn conjugate_of(g: &LieAlgebra, y: &Element, x: &Element) -> Element {
    let e = exact_linalg::exp_nilpotent(&g.ad_matrix(y)).expect("nilradical elements are ad-nilpotent");
    x.apply(&e)
}

/// Random instance whose nilradical has class at most 2 and dimension at
/// most 6. Covers trivial, semisimple and torus Levi factors; about half the
/// instances with a nonzero Levi element are built as conjugates of that
/// element, so both verdicts occur.
pub fn random_class2_instance(rng: &mut impl Rng) -> Instance {
    let family = rng.gen_range(0..6);
    let (name, g, levi_dim) = match family {
        0 => {
            let v = rng.gen_range(1..=4);
            let d = rng.gen_range(0..=(6 - v).min(3));
            ("class2", random_class2_algebra(rng, v, d), 0)
        }
        1 => ("sl2_v1", sl2_module(1), 3),
        2 => ("sl2_v2", sl2_module(2), 3),
        3 => ("sl2_heisenberg", sl2_heisenberg(), 3),
        4 => ("gl2_v1", gl2_v1(), 4),
        _ => ("torus_heisenberg", torus_heisenberg(), 1),
    };
    let dim = g.dim();
    let ld = levi_prefix(dim, levi_dim);
    let x_l = match family {
        1..=4 => {
            let mut v = random_sl2_nilpotent(rng).into_coords();
            v.resize(dim, q(0, 1));
            Element::new(v)
        }
        _ => Element::zero(dim),
    };
    let x = if !x_l.is_zero() && rng.gen_bool(0.5) {
        let y = random_in(rng, ld.nilradical());
        conjugate_of(&g, &y, &x_l)
    } else {
        loop {
            let x = &x_l + &random_in(rng, ld.nilradical());
            if !x.is_zero() {
                break x;
            }
        }
    };
    let inst = Instance::new(name, g, ld, x);
    if rng.gen_bool(0.5) {
        change_basis(&inst, &random_unimodular(rng, dim))
    } else {
        inst
    }
}

/// Random validated instance from any family, including reductive, higher
/// class unipotent and class-2 instances.
pub fn random_instance(rng: &mut impl Rng) -> Instance {
    match rng.gen_range(0..5) {
        0 => {
            let g = sl2();
            Instance::new("random_sl2", g, levi_prefix(3, 3), random_sl2_nilpotent(rng))
        }
        1 => Instance::new("random_sl3", sl3(), levi_prefix(8, 8), random_sl3_nilpotent(rng)),
        2 => random_unipotent_instance(rng, 6),
        _ => random_class2_instance(rng),
    }
}

/// Random element of the nilradical for conjugation tests.
pub fn random_nilradical_element(rng: &mut impl Rng, inst: &Instance) -> Element {
    random_in(rng, inst.levi.nilradical())
}
