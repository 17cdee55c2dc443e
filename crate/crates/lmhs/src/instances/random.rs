//! Seeded random SNC instances whose `d1` squares to zero by construction.
//!
//! Odd-degree restrictions kill a common Lagrangian of each component's `H³`
//! and land in an isotropic subspace of the triple curve's `H¹`; even-degree
//! restrictions satisfy the triple-point balance `R₁n₁ + R₂n₂ = 0`.

use rand::Rng;

use super::builder::{g, paired_types, piece, point, real_degree, restriction};
use crate::exactlinalg::{Gauss, Matrix};
use crate::sample::{self, SampleRng};
use crate::steenbrink::{validate, DegreeData, Piece, Restriction, SncInstance, Stratum};

/// Shape of a random instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SncFamily {
    /// Two threefolds meeting along a surface.
    Double,
    /// Three threefolds with pairwise surfaces and a triple curve.
    Triple,
}

/// `H³` of a threefold: `[Ω,p1,p2,p̄1,p̄2,Ω̄]` with `span(p2,p̄2)` Lagrangian
/// and `Ω` restricting to zero.
fn threefold_middle() -> DegreeData {
    let types = vec![(3, 0), (2, 1), (2, 1), (1, 2), (1, 2), (0, 3)];
    let mut conj = Matrix::zeros(6, 6);
    for (a, b) in [(0, 5), (1, 3), (2, 4)] {
        conj[(a, b)] = Gauss::one();
        conj[(b, a)] = Gauss::one();
    }
    let mut gram = Matrix::zeros(6, 6);
    gram[(0, 5)] = -Gauss::i();
    gram[(5, 0)] = Gauss::i();
    gram[(1, 4)] = Gauss::i();
    gram[(2, 3)] = Gauss::i();
    gram[(4, 1)] = -Gauss::i();
    gram[(3, 2)] = -Gauss::i();
    DegreeData::from_types(&types, conj, gram)
}

/// `H¹` and `H³` of a surface, `u_k · w̄_k = ū_k · w_k = 1`.
fn surface_odd() -> (DegreeData, DegreeData) {
    let (t1, c1) = paired_types(2, 1, 0);
    let (t3, c3) = paired_types(2, 2, 1);
    let mut g1 = Matrix::zeros(4, 4);
    for k in 0..2 {
        g1[(k, 2 + k)] = Gauss::one();
        g1[(2 + k, k)] = Gauss::one();
    }
    let g3 = g1.transpose().scale(&-Gauss::one());
    (
        DegreeData::from_types(&t1, c1, g1),
        DegreeData::from_types(&t3, c3, g3),
    )
}

/// `H¹` of the triple curve with `u1,ū1` spanning an isotropic plane.
fn curve_odd() -> DegreeData {
    let (types, conj) = paired_types(2, 1, 0);
    let mut gram = Matrix::zeros(4, 4);
    gram[(0, 3)] = Gauss::i();
    gram[(1, 2)] = Gauss::i();
    gram[(3, 0)] = -Gauss::i();
    gram[(2, 1)] = -Gauss::i();
    DegreeData::from_types(&types, conj, gram)
}

fn nonzero_gauss(rng: &mut SampleRng, bound: i64) -> Gauss {
    loop {
        let z = sample::gauss(rng, bound);
        if !z.is_zero() {
            return z;
        }
    }
}

/// Random nondegenerate real symmetric Gram of size `s`.
fn random_gram(rng: &mut SampleRng, s: usize) -> Matrix {
    loop {
        let mut m = Matrix::zeros(s, s);
        for r in 0..s {
            for c in r..s {
                let x = g(sample::small_int(rng, 2));
                m[(r, c)] = x.clone();
                m[(c, r)] = x;
            }
        }
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// `H²` of a surface: `σ`, `s` algebraic classes with Gram `ns`, `σ̄`.
fn surface_two(ns: &Matrix) -> DegreeData {
    let s = ns.rows();
    let n = s + 2;
    let mut types = vec![(2, 0)];
    types.extend(vec![(1, 1); s]);
    types.push((0, 2));
    let mut conj = Matrix::identity(n);
    conj[(0, 0)] = Gauss::zero();
    conj[(n - 1, n - 1)] = Gauss::zero();
    conj[(0, n - 1)] = Gauss::one();
    conj[(n - 1, 0)] = Gauss::one();
    let mut gram = Matrix::zeros(n, n);
    gram[(0, n - 1)] = Gauss::ratio(1, 2);
    gram[(n - 1, 0)] = Gauss::ratio(1, 2);
    gram.set_block(1, 1, ns);
    DegreeData::from_types(&types, conj, gram)
}

fn threefold(id: &str, component: usize, b2: usize) -> Piece {
    piece(
        id,
        vec![component],
        vec![
            (0, point(0)),
            (2, real_degree(b2, 1, Matrix::identity(b2))),
            (3, threefold_middle()),
            (4, real_degree(b2, 2, Matrix::identity(b2))),
            (6, point(3)),
        ],
    )
}

fn surface(id: &str, components: Vec<usize>, ns: &Matrix) -> Piece {
    let (h1, h3) = surface_odd();
    piece(
        id,
        components,
        vec![
            (0, point(0)),
            (1, h1),
            (2, surface_two(ns)),
            (3, h3),
            (4, point(2)),
        ],
    )
}

/// `H³` restriction killing `span(p2,p̄2)`.
fn middle_restriction(rng: &mut SampleRng) -> Matrix {
    let (a, b) = (nonzero_gauss(rng, 3), sample::gauss(rng, 3));
    let mut m = Matrix::zeros(4, 6);
    m[(0, 1)] = a.clone();
    m[(1, 1)] = b.clone();
    m[(2, 3)] = a.conj();
    m[(3, 3)] = b.conj();
    m
}

fn double(rng: &mut SampleRng) -> SncInstance {
    let (r1, r2) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
    let s = rng.gen_range(1..=3);
    let ns = random_gram(rng, s);
    let rmat = |rng: &mut SampleRng, rows, cols| {
        Matrix::from_fn(rows, cols, |_, _| g(sample::small_int(rng, 2)))
    };
    let r1m = rmat(rng, s, r1);
    let n1 = rmat(rng, 1, r1);
    let mut r2m = rmat(rng, s, r2);
    let mut n2 = rmat(rng, 1, r2);
    n2[(0, r2 - 1)] = g(rng.gen_range(1..=2));
    // fix the last column of R₂ so that R₁n₁ + R₂n₂ = 0
    let target = r1m.mul_vec(n1.row(0));
    let last = n2[(0, r2 - 1)].clone();
    for row in 0..s {
        let partial: Gauss = (0..r2 - 1).map(|c| &r2m[(row, c)] * &n2[(0, c)]).sum();
        let needed = -(&target[row] + &partial);
        r2m[(row, r2 - 1)] = &needed * &last.inv().expect("nonzero");
    }
    let embed = |m: &Matrix| {
        let mut out = Matrix::zeros(s + 2, m.cols());
        out.set_block(1, 0, m);
        out
    };
    SncInstance {
        name: "random-double".into(),
        fiber_dim: 3,
        strata: vec![
            Stratum {
                depth: 1,
                pieces: vec![threefold("X1", 0, r1), threefold("X2", 1, r2)],
            },
            Stratum {
                depth: 2,
                pieces: vec![surface("S", vec![0, 1], &ns)],
            },
        ],
        restrictions: vec![
            restriction("X1", "S", 0, Matrix::identity(1)),
            restriction("X2", "S", 0, Matrix::identity(1)),
            restriction("X1", "S", 2, embed(&r1m)),
            restriction("X2", "S", 2, embed(&r2m)),
            restriction("X1", "S", 3, middle_restriction(rng)),
            restriction("X2", "S", 3, middle_restriction(rng)),
            restriction("X1", "S", 4, n1),
            restriction("X2", "S", 4, n2),
        ],
        kahler: None,
        a0: None,
        frame: None,
    }
}

fn triple(rng: &mut SampleRng) -> SncInstance {
    let names = ["P0", "P1", "P2"];
    let pairs = [(0, 1), (0, 2), (1, 2)];
    let components: Vec<Piece> = names
        .iter()
        .enumerate()
        .map(|(i, id)| threefold(id, i, rng.gen_range(1..=2)))
        .collect();
    let mut surfaces = Vec::new();
    let mut restrictions: Vec<Restriction> = Vec::new();
    for &(i, j) in &pairs {
        let id = format!("S{i}{j}");
        let s = rng.gen_range(1..=2);
        let ns = random_gram(rng, s);
        surfaces.push(surface(&id, vec![i, j], &ns));
        for k in [i, j] {
            restrictions.push(restriction(names[k], &id, 0, Matrix::identity(1)));
            restrictions.push(restriction(names[k], &id, 3, middle_restriction(rng)));
        }
        let mut to_curve = Matrix::zeros(4, 4);
        for k in 0..2 {
            let z = sample::gauss(rng, 3);
            to_curve[(2, 2 + k)] = z.conj();
            to_curve[(0, k)] = z;
        }
        restrictions.push(restriction(&id, "C", 0, Matrix::identity(1)));
        restrictions.push(restriction(&id, "C", 1, to_curve));
    }
    let curve = piece(
        "C",
        vec![0, 1, 2],
        vec![(0, point(0)), (1, curve_odd()), (2, point(1))],
    );
    SncInstance {
        name: "random-triple".into(),
        fiber_dim: 3,
        strata: vec![
            Stratum {
                depth: 1,
                pieces: components,
            },
            Stratum {
                depth: 2,
                pieces: surfaces,
            },
            Stratum {
                depth: 3,
                pieces: vec![curve],
            },
        ],
        restrictions,
        kahler: None,
        a0: None,
        frame: None,
    }
}

/// A valid random instance of the given family.
///
/// Panics if the construction produces an invalid instance, which would be a
/// bug in the generator rather than bad luck.
pub fn random_snc(rng: &mut SampleRng, family: SncFamily) -> SncInstance {
    let inst = match family {
        SncFamily::Double => double(rng),
        SncFamily::Triple => triple(rng),
    };
    let issues = validate(&inst);
    assert!(
        issues.is_empty(),
        "random {family:?} instance is invalid: {issues:?}"
    );
    inst
}
