//! Adapted real bases of a weight-3 limit, asymptotic frames of `F²`, the
//! wedge test for `F² ∩ F̄² = 0`, and the asymptotic period matrix.

mod verdict;

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::asymptotics::{AsymptoticError, AsymptoticScalar, Poly};
use crate::exactlinalg::{Gauss, Matrix, Subspace};
use crate::mhs::{deligne_splitting, DeligneSplitting, MhsError, MixedHodge};
use crate::nilpotent::{check_hypothesis_iso, NilpotentError, NilpotentOp};
use crate::steenbrink::{LimitCohomology, SncInstance, SteenbrinkError};

pub use verdict::{
    a_infinity, ddbar_wedge_verdict, paper_blocks, period_matrix, polarization_verdict, q_matrix,
    DdbarVerdict, PolarizationOutcome, WedgeReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrameError {
    #[error("UnsupportedDiamond: {0}")]
    UnsupportedDiamond(String),
    #[error("HypothesisFailure: {0}")]
    HypothesisFailure(String),
    #[error("NotRealizable: {0}")]
    NotRealizable(String),
    #[error("UnsupportedOrder: N² ≠ 0 on the frame span")]
    UnsupportedOrder,
    #[error("ConsistencyError: {0}")]
    Consistency(String),
    #[error("ShapeError: {0}")]
    Shape(String),
    #[error("TwistError: {0}")]
    Twist(String),
    #[error(transparent)]
    Asymptotic(#[from] AsymptoticError),
    #[error(transparent)]
    Mhs(#[from] MhsError),
    #[error(transparent)]
    Nilpotent(#[from] NilpotentError),
    #[error(transparent)]
    Steenbrink(#[from] SteenbrinkError),
}

/// The two supported weight-3 limit diamonds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum FrameShape {
    /// `I^{3,0}`, `h = dim I^{2,1}`, `m = dim I^{2,2} = dim I^{1,1}`.
    Clemens { h: usize, m: usize },
    /// `I^{3,1}`, `I^{2,0}` of dimension one, `I^{3,0} = 0`.
    HashimotoSano { h: usize, m: usize },
}

impl FrameShape {
    pub fn h(&self) -> usize {
        match *self {
            FrameShape::Clemens { h, .. } | FrameShape::HashimotoSano { h, .. } => h,
        }
    }

    pub fn m(&self) -> usize {
        match *self {
            FrameShape::Clemens { m, .. } | FrameShape::HashimotoSano { m, .. } => m,
        }
    }

    /// Number of `β` vectors.
    pub fn betas(&self) -> usize {
        match *self {
            FrameShape::Clemens { h, .. } => 2 * h + 2,
            FrameShape::HashimotoSano { h, .. } => 2 * h,
        }
    }

    pub fn epsilons(&self) -> usize {
        match self {
            FrameShape::Clemens { .. } => 0,
            FrameShape::HashimotoSano { .. } => 4,
        }
    }

    pub fn dim(&self) -> usize {
        2 * self.m() + self.betas() + self.epsilons()
    }

    /// `dim F³` of the limit.
    pub fn top(&self) -> usize {
        1
    }
}

/// Limit data of a frame, everything expressed in the real basis
/// `[α_1..α_m, β.., γ_1..γ_m, ε_1..ε_4]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LimitFrameSpec {
    pub shape: FrameShape,
    /// Real basis vectors as columns, in limit coordinates.
    pub basis: Matrix,
    /// `N` in the real basis.
    pub n: Matrix,
    /// Cup product `∫ u ∪ v` in the real basis; `Q̃ = i·gram`.
    pub gram: Matrix,
    /// `δ_k = γ_k − Σ_l x_{kl} α_l ∈ I^{2,2}`.
    pub x: Matrix,
    /// Rows: `β`-coordinates of the `u_p`. Clemens puts the `I^{3,0}` vector last.
    pub b: Matrix,
    /// `ξ_i = w_{i1} ε_1 + w_{i2} ε_2`, `ξ_1 ∈ I^{2,0}`, `ξ_2 = ξ̄_1`.
    pub w: Option<Matrix>,
    /// `σ_i = Σ_j y_{ij} ε_j`, `σ_1 ∈ I^{3,1}` with `N σ_1 = ξ_1`.
    pub y: Option<Matrix>,
}

impl LimitFrameSpec {
    pub fn alpha(&self, l: usize) -> usize {
        l
    }

    pub fn beta(&self, i: usize) -> usize {
        self.shape.m() + i
    }

    pub fn gamma(&self, k: usize) -> usize {
        self.shape.m() + self.shape.betas() + k
    }

    pub fn epsilon(&self, j: usize) -> usize {
        2 * self.shape.m() + self.shape.betas() + j
    }

    pub fn dim(&self) -> usize {
        self.shape.dim()
    }

    /// Frame-level invariants: `N` relations, isotropy and isometry of the Gram.
    pub fn check(&self) -> Result<(), FrameError> {
        let (m, dim) = (self.shape.m(), self.dim());
        if self.basis.cols() != dim || self.n.rows() != dim || self.gram.rows() != dim {
            return Err(FrameError::Shape(format!(
                "spec matrices do not match dimension {dim}"
            )));
        }
        let unit = |i: usize| {
            (0..dim)
                .map(|r| Gauss::int((r == i) as i64))
                .collect::<Vec<_>>()
        };
        for k in 0..m {
            if self.n.mul_vec(&unit(self.gamma(k))) != unit(self.alpha(k)) {
                return Err(FrameError::Consistency(format!(
                    "N γ_{} ≠ α_{}",
                    k + 1,
                    k + 1
                )));
            }
        }
        if self.shape.epsilons() == 4 {
            for (from, to) in [(2, 0), (3, 1)] {
                if self.n.mul_vec(&unit(self.epsilon(from))) != unit(self.epsilon(to)) {
                    return Err(FrameError::Consistency(format!(
                        "N ε_{} ≠ ε_{}",
                        from + 1,
                        to + 1
                    )));
                }
            }
        }
        let g = &self.gram;
        let isometry = &(&self.n.transpose() * g) + &(g * &self.n);
        if !isometry.is_zero() {
            return Err(FrameError::Consistency(
                "N is not an infinitesimal isometry of the Gram".into(),
            ));
        }
        let alpha_beta = (0..m).flat_map(|r| (0..m + self.shape.betas()).map(move |s| (r, s)));
        if alpha_beta
            .into_iter()
            .any(|(r, s)| !g[(self.alpha(r), s)].is_zero())
        {
            return Err(FrameError::Consistency(
                "α is not orthogonal to α and β".into(),
            ));
        }
        Ok(())
    }
}

fn conj_vec(v: &[Gauss], j: &Matrix) -> Vec<Gauss> {
    j.mul_vec(&v.iter().map(Gauss::conj).collect::<Vec<_>>())
}

/// `v + J v̄` and `i(v − J v̄)` for each basis vector of a real subspace.
fn real_candidates(s: &Subspace, j: &Matrix) -> Vec<Vec<Gauss>> {
    s.vectors()
        .into_iter()
        .flat_map(|v| {
            let w = conj_vec(&v, j);
            let re = v.iter().zip(&w).map(|(a, b)| a + b).collect();
            let im = v
                .iter()
                .zip(&w)
                .map(|(a, b)| &Gauss::i() * &(a - b))
                .collect();
            [re, im]
        })
        .collect()
}

/// Real vectors of `s` completing `base ∩ s` to `s`.
fn real_complement(
    s: &Subspace,
    base: &Subspace,
    j: &Matrix,
    what: &str,
) -> Result<Vec<Vec<Gauss>>, FrameError> {
    if !s.is_real(j) {
        return Err(FrameError::NotRealizable(format!(
            "{what} is not defined over ℝ"
        )));
    }
    Ok(base
        .intersection(s)
        .greedy_extension(&real_candidates(s, j)))
}

fn shape_of(split: &DeligneSplitting) -> Result<FrameShape, FrameError> {
    let dims = split.hodge_numbers();
    let d = |p: i32, q: i32| dims.get(&(p, q)).copied().unwrap_or(0);
    let support: Vec<(i32, i32)> = dims
        .iter()
        .filter(|(_, &k)| k > 0)
        .map(|(&pq, _)| pq)
        .collect();
    let within = |allowed: &[(i32, i32)]| support.iter().all(|pq| allowed.contains(pq));
    let (h, m) = (d(2, 1), d(2, 2));
    let balanced = d(1, 2) == h && d(1, 1) == m;
    let clemens = [(3, 0), (2, 1), (1, 2), (0, 3), (2, 2), (1, 1)];
    let hs = [
        (3, 1),
        (1, 3),
        (2, 0),
        (0, 2),
        (2, 2),
        (1, 1),
        (2, 1),
        (1, 2),
    ];
    if balanced && within(&clemens) && d(3, 0) == 1 && d(0, 3) == 1 {
        return Ok(FrameShape::Clemens { h, m });
    }
    if balanced
        && within(&hs)
        && [(3, 1), (1, 3), (2, 0), (0, 2)]
            .iter()
            .all(|&(p, q)| d(p, q) == 1)
    {
        return Ok(FrameShape::HashimotoSano { h, m });
    }
    let listing: BTreeMap<String, usize> = dims
        .iter()
        .map(|(&(p, q), &k)| (format!("{p},{q}"), k))
        .collect();
    Err(FrameError::UnsupportedDiamond(format!(
        "Hodge numbers {listing:?}"
    )))
}

/// Real adapted basis and limit constants of a weight-3 limit with bilinear form `cup`.
pub fn adapted_basis(
    mhs: &MixedHodge,
    split: &DeligneSplitting,
    n: &NilpotentOp,
    cup: &Matrix,
) -> Result<LimitFrameSpec, FrameError> {
    let shape = shape_of(split)?;
    if !check_hypothesis_iso(n, &mhs.weight)? {
        return Err(FrameError::HypothesisFailure(
            "N^k: Gr_{3+k} → Gr_{3−k} is not an isomorphism".into(),
        ));
    }
    let j = &mhs.conj;
    let dim = mhs.dim;
    let nm = n.matrix();
    let piece = |p, q| split.piece(p, q);

    let i11 = piece(1, 1);
    let i22 = piece(2, 2);
    let gammas = real_complement(&i11.sum(&i22), &i11, j, "I^{1,1} ⊕ I^{2,2}")?;
    let alphas: Vec<Vec<Gauss>> = gammas.iter().map(|g| nm.mul_vec(g)).collect();
    let m = gammas.len();
    let mut x = Matrix::zeros(m, m);
    if m > 0 {
        let cols: Vec<Vec<Gauss>> = i22
            .vectors()
            .into_iter()
            .chain(alphas.iter().cloned())
            .collect();
        let frame = Matrix::from_columns(dim, &cols);
        for (k, g) in gammas.iter().enumerate() {
            let coords = frame
                .solve_vec(g)
                .ok_or_else(|| FrameError::HypothesisFailure("γ leaves I^{2,2} ⊕ N(γ)".into()))?;
            for l in 0..m {
                x[(k, l)] = coords[i22.dim() + l].clone();
            }
        }
    }

    let (beta_space, u_space, eps) = match shape {
        FrameShape::Clemens { .. } => {
            let b = [(3, 0), (2, 1), (1, 2), (0, 3)]
                .iter()
                .fold(Subspace::zero(dim), |acc, &(p, q)| acc.sum(&piece(p, q)));
            (
                b,
                [piece(2, 1).vectors(), piece(3, 0).vectors()].concat(),
                Vec::new(),
            )
        }
        FrameShape::HashimotoSano { .. } => {
            let low = piece(2, 0).sum(&piece(0, 2));
            let high = piece(3, 1).sum(&piece(1, 3)).sum(&low);
            let upper = real_complement(&high, &low, j, "I^{3,1} ⊕ I^{1,3} ⊕ I^{2,0} ⊕ I^{0,2}")?;
            let mut eps: Vec<Vec<Gauss>> = upper.iter().map(|v| nm.mul_vec(v)).collect();
            eps.extend(upper);
            (piece(2, 1).sum(&piece(1, 2)), piece(2, 1).vectors(), eps)
        }
    };
    let betas = real_complement(&beta_space, &Subspace::zero(dim), j, "⊕ I^{p,3−p}")?;

    let columns: Vec<Vec<Gauss>> = [alphas, betas.clone(), gammas, eps.clone()].concat();
    if columns.len() != shape.dim() || columns.len() != dim {
        return Err(FrameError::Shape(format!(
            "real basis has {} vectors for dimension {dim}",
            columns.len()
        )));
    }
    let basis = Matrix::from_columns(dim, &columns);
    let inverse = basis
        .inverse()
        .ok_or_else(|| FrameError::Consistency("real basis is dependent".into()))?;
    let n_real = &(&inverse * nm) * &basis;
    let gram = &(&basis.transpose() * cup) * &basis;
    if !n_real.is_real() {
        return Err(FrameError::NotRealizable("N is not real".into()));
    }
    if !gram.is_real() {
        return Err(FrameError::Twist(
            "cup product is not real on the real basis".into(),
        ));
    }

    let beta_frame = Matrix::from_columns(dim, &betas);
    let b_rows: Vec<Vec<Gauss>> = u_space
        .iter()
        .map(|u| beta_frame.solve_vec(u).expect("u lies in the β span"))
        .collect();
    let b = Matrix::from_rows(b_rows);

    let (w, y) = match shape {
        FrameShape::Clemens { .. } => (None, None),
        FrameShape::HashimotoSano { .. } => {
            let sigma = piece(3, 1).vectors().remove(0);
            let xi = nm.mul_vec(&sigma);
            let eps_frame = Matrix::from_columns(dim, &eps);
            let ys = eps_frame.solve_vec(&sigma).expect("σ lies in the ε span");
            let ws = eps_frame.solve_vec(&xi).expect("ξ lies in the ε span");
            if ws[2..].iter().any(|c| !c.is_zero()) || ws[..2] != ys[2..] {
                return Err(FrameError::NotRealizable(
                    "N σ₁ ≠ ξ₁ in ε-coordinates".into(),
                ));
            }
            let conj_row = |r: &[Gauss]| r.iter().map(Gauss::conj).collect::<Vec<_>>();
            let w = Matrix::from_rows(vec![ws[..2].to_vec(), conj_row(&ws[..2])]);
            let y = Matrix::from_rows(vec![ys.clone(), conj_row(&ys)]);
            (Some(w), Some(y))
        }
    };
    let spec = LimitFrameSpec {
        shape,
        basis,
        n: n_real,
        gram,
        x,
        b,
        w,
        y,
    };
    spec.check()?;
    Ok(spec)
}

/// [`adapted_basis`] for `H³` of an instance.
pub fn adapted_basis_for(
    lim: &LimitCohomology,
    inst: &SncInstance,
) -> Result<LimitFrameSpec, FrameError> {
    let cup = lim
        .intersection_form(inst)?
        .ok_or_else(|| FrameError::UnsupportedDiamond("weights outside 2..4".into()))?;
    let split = deligne_splitting(&lim.mhs)?;
    adapted_basis(&lim.mhs, &split, &lim.monodromy, &cup)
}

/// Frame vectors with asymptotic coordinates in the real basis of a spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticFrame {
    pub labels: Vec<String>,
    pub vectors: Vec<Vec<AsymptoticScalar>>,
    /// Trailing-order-independent count of `F³` directions among the vectors.
    pub top: usize,
    pub untwisted: bool,
}

impl AsymptoticFrame {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn get(&self, label: &str) -> Option<&[AsymptoticScalar]> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(|i| self.vectors[i].as_slice())
    }
}

/// Holomorphic frame of `F²` near `t = 0`: each coordinate tends to its limit
/// constant up to a tail. Vectors are ordered for the signature test,
/// `F³` directions placed after the `I^{2,1}` and `δ` directions.
pub fn canonical_frame(spec: &LimitFrameSpec) -> AsymptoticFrame {
    let dim = spec.dim();
    let (h, m) = (spec.shape.h(), spec.shape.m());
    let coords = |entries: &[(usize, Gauss)]| {
        let mut v = vec![AsymptoticScalar::pure_tail(); dim];
        for (i, c) in entries {
            v[*i] = AsymptoticScalar::new(Poly::constant(c.clone()), true);
        }
        v
    };
    let u = |p: usize| {
        coords(
            &(0..spec.shape.betas())
                .map(|i| (spec.beta(i), spec.b[(p, i)].clone()))
                .collect::<Vec<_>>(),
        )
    };
    let v = |q: usize| {
        let mut e: Vec<(usize, Gauss)> =
            (0..m).map(|l| (spec.alpha(l), -&spec.x[(q, l)])).collect();
        e.push((spec.gamma(q), Gauss::one()));
        coords(&e)
    };
    let mut labels = Vec::new();
    let mut vectors = Vec::new();
    for p in 0..h {
        labels.push(format!("u{}", p + 1));
        vectors.push(u(p));
    }
    for q in 0..m {
        labels.push(format!("v{}", q + 1));
        vectors.push(v(q));
    }
    match spec.shape {
        FrameShape::Clemens { .. } => {
            labels.push(format!("u{}", h + 1));
            vectors.push(u(h));
        }
        FrameShape::HashimotoSano { .. } => {
            let y = spec.y.as_ref().expect("HS spec carries y");
            let w = spec.w.as_ref().expect("HS spec carries w");
            labels.push("f".into());
            vectors.push(coords(
                &(0..4)
                    .map(|j| (spec.epsilon(j), y[(0, j)].clone()))
                    .collect::<Vec<_>>(),
            ));
            labels.push("g".into());
            vectors.push(coords(
                &(0..2)
                    .map(|j| (spec.epsilon(j), w[(0, j)].clone()))
                    .collect::<Vec<_>>(),
            ));
        }
    }
    AsymptoticFrame {
        labels,
        vectors,
        top: spec.shape.top(),
        untwisted: false,
    }
}

/// `u′ = e^{zN} u = u + zNu`.
pub fn untwist(
    frame: &AsymptoticFrame,
    spec: &LimitFrameSpec,
) -> Result<AsymptoticFrame, FrameError> {
    if !spec.n.pow(2).is_zero() {
        return Err(FrameError::UnsupportedOrder);
    }
    let z = AsymptoticScalar::exact(Poly::z());
    let n = &spec.n;
    let vectors = frame
        .vectors
        .iter()
        .map(|v| {
            (0..v.len())
                .map(|r| {
                    let nv: AsymptoticScalar = (0..v.len())
                        .filter(|&c| !n[(r, c)].is_zero())
                        .map(|c| v[c].scale(&n[(r, c)]))
                        .sum();
                    &v[r] + &(&z * &nv)
                })
                .collect()
        })
        .collect();
    Ok(AsymptoticFrame {
        vectors,
        untwisted: true,
        ..frame.clone()
    })
}
