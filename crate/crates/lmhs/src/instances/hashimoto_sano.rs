//! Two threefolds `X1` (a blow-up carrying `a+1` exceptional divisors over
//! elliptic curves) and `X2 = (P¹)³`, glued along a (2,2,2) K3 surface `S`.

use super::builder::{diag, g, paired_types, piece, point, real_degree, restriction};
use crate::exactlinalg::{Gauss, Matrix};
use crate::steenbrink::{DegreeData, KahlerData, SncInstance, Stratum};

/// Intersection form on `span(h1,h2,h3) ⊂ H²(S)`.
pub fn ns_gram() -> Matrix {
    Matrix::from_ints(&[[0, 2, 2], [2, 0, 2], [2, 2, 0]])
}

/// The gluing automorphism in the form it is usually displayed.
pub fn iota_matrix_displayed(a: i64) -> Matrix {
    Matrix::from_ints(&[
        [1, 4 * a * a - 2 * a, 2 * a * a + 2 * a],
        [0, 1 - 2 * a, -2 * a],
        [0, 2 * a, 1 + 2 * a],
    ])
}

/// Action of the gluing automorphism on `span(h1,h2,h3)`, the composite of two
/// covering involutions; an isometry of [`ns_gram`].
pub fn iota_action(a: i64) -> Matrix {
    Matrix::from_ints(&[
        [1, 4 * a * a - 2 * a, 4 * a * a + 2 * a],
        [0, 1 - 2 * a, -2 * a],
        [0, 2 * a, 1 + 2 * a],
    ])
}

/// Weight-2 structure on `H²(S)`: `σ`, the `ns` lattice, 17 transcendental
/// `(1,1)` classes of square `−1`, and `σ̄` with `∫σσ̄ = 1/2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K3Model222 {
    pub ns: Matrix,
    pub extra: usize,
}

impl Default for K3Model222 {
    fn default() -> Self {
        K3Model222 {
            ns: ns_gram(),
            extra: 17,
        }
    }
}

impl K3Model222 {
    pub fn rank(&self) -> usize {
        self.ns.rows() + self.extra + 2
    }

    /// Index of `h1` in the `H²(S)` basis.
    pub fn ns_offset(&self) -> usize {
        1
    }

    pub fn gram(&self) -> Matrix {
        let n = self.rank();
        let mut gm = Matrix::zeros(n, n);
        gm[(0, n - 1)] = Gauss::ratio(1, 2);
        gm[(n - 1, 0)] = Gauss::ratio(1, 2);
        gm.set_block(1, 1, &self.ns);
        for k in 0..self.extra {
            let at = 1 + self.ns.rows() + k;
            gm[(at, at)] = g(-1);
        }
        gm
    }

    pub fn degree_two(&self) -> DegreeData {
        let n = self.rank();
        let mut types = vec![(2, 0)];
        types.extend(vec![(1, 1); n - 2]);
        types.push((0, 2));
        let mut conj = Matrix::identity(n);
        conj[(0, 0)] = Gauss::zero();
        conj[(n - 1, n - 1)] = Gauss::zero();
        conj[(0, n - 1)] = Gauss::one();
        conj[(n - 1, 0)] = Gauss::one();
        DegreeData::from_types(&types, conj, self.gram())
    }

    /// Embed `ns` coordinates (3 × k) into `H²(S)` coordinates.
    pub fn embed_ns(&self, m: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rank(), m.cols());
        out.set_block(self.ns_offset(), 0, m);
        out
    }
}

/// `H¹(C)(−1)` blocks of type (2,1)+(1,2) with `∫ e ∪ ē = i`.
fn curve_blocks(k: usize) -> DegreeData {
    let (types, conj) = paired_types(k, 2, 1);
    let mut gram = Matrix::zeros(2 * k, 2 * k);
    for j in 0..k {
        gram[(j, k + j)] = Gauss::i();
        gram[(k + j, j)] = -Gauss::i();
    }
    DegreeData::from_types(&types, conj, gram)
}

pub fn hashimoto_sano_instance(a: u32) -> SncInstance {
    assert!(a >= 1, "a must be positive");
    let ai = a as i64;
    let k3 = K3Model222::default();
    let b2_x1 = a as usize + 4;
    let mut x1_signs = vec![1, 1, 1];
    x1_signs.extend(vec![-1; a as usize + 1]);
    let x1 = piece(
        "X1",
        vec![0],
        vec![
            (0, point(0)),
            (2, real_degree(b2_x1, 1, diag(&x1_signs))),
            (3, curve_blocks(a as usize + 1)),
            (4, real_degree(b2_x1, 2, diag(&x1_signs))),
            (6, point(3)),
        ],
    );
    let x2 = piece(
        "X2",
        vec![1],
        vec![
            (0, point(0)),
            (2, real_degree(3, 1, Matrix::identity(3))),
            (4, real_degree(3, 2, Matrix::identity(3))),
            (6, point(3)),
        ],
    );
    let s = piece(
        "S",
        vec![0, 1],
        vec![(0, point(0)), (2, k3.degree_two()), (4, point(2))],
    );

    // X1 side, in the coordinates of its own copy of S: H_i ↦ h_i, E_k ↦ h_1, E ↦ D
    let mut x1_side = Matrix::zeros(3, b2_x1);
    x1_side.set_block(0, 0, &Matrix::identity(3));
    for k in 0..a as usize {
        x1_side[(0, 3 + k)] = g(1);
    }
    let d = [16 * ai * ai - ai + 4, 4 - 8 * ai, 4 + 8 * ai];
    for (r, v) in d.iter().enumerate() {
        x1_side[(r, b2_x1 - 1)] = g(*v);
    }
    let glue = iota_action(ai).inverse().expect("unimodular");
    let x1_to_s = k3.embed_ns(&(&glue * &x1_side));
    let x2_to_s = k3.embed_ns(&Matrix::identity(3));
    let mut x1_deg4 = vec![2, 2, 2];
    x1_deg4.extend(vec![1; a as usize + 1]);

    let mut omega = Matrix::zeros(k3.rank(), 1);
    for r in 0..3 {
        omega[(k3.ns_offset() + r, 0)] = g(1);
    }
    let omega_dual = (&k3.gram() * &omega).transpose();
    let mut kahler = KahlerData::new();
    kahler.insert(
        "S".into(),
        [(0, omega), (2, omega_dual)].into_iter().collect(),
    );
    kahler.insert(
        "X2".into(),
        [
            (0, Matrix::from_ints(&[[1], [1], [1]])),
            (2, Matrix::from_ints(&[[0, 1, 1], [1, 0, 1], [1, 1, 0]])),
            (4, Matrix::from_ints(&[[1, 1, 1]])),
        ]
        .into_iter()
        .collect(),
    );

    SncInstance {
        name: format!("hashimoto-sano(a={a})"),
        fiber_dim: 3,
        strata: vec![
            Stratum {
                depth: 1,
                pieces: vec![x1, x2],
            },
            Stratum {
                depth: 2,
                pieces: vec![s],
            },
        ],
        restrictions: vec![
            restriction("X1", "S", 0, Matrix::identity(1)),
            restriction("X2", "S", 0, Matrix::identity(1)),
            restriction("X1", "S", 2, x1_to_s),
            restriction("X2", "S", 2, x2_to_s),
            restriction("X1", "S", 4, Matrix::from_ints(&[x1_deg4])),
            restriction("X2", "S", 4, Matrix::from_ints(&[[2, 2, 2]])),
        ],
        kahler: Some(kahler),
        a0: None,
        frame: None,
    }
}
