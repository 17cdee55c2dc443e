use super::instance::{HodgeType, SncInstance};
use super::SteenbrinkError;
use crate::exactlinalg::{quotient_map, Gauss, Matrix, Subspace};

/// Hodge types of the basis of `H^d(E(depth))`, pieces in listed order.
pub fn stratum_types(inst: &SncInstance, depth: usize, d: i64) -> Vec<HodgeType> {
    if d < 0 {
        return Vec::new();
    }
    inst.pieces_at(depth)
        .iter()
        .flat_map(|p| p.degree(d as u32).types())
        .collect()
}

pub fn stratum_conj(inst: &SncInstance, depth: usize, d: i64) -> Matrix {
    if d < 0 {
        return Matrix::zeros(0, 0);
    }
    let blocks: Vec<Matrix> = inst
        .pieces_at(depth)
        .iter()
        .map(|p| p.degree(d as u32).conj)
        .collect();
    Matrix::block_diagonal(&blocks)
}

/// Block-diagonal cup Gram `H^d(E(depth)) × H^{top−d}(E(depth)) → ℚ(i)`.
///
/// Gram twists are a normalization of the trace and are dropped here.
pub fn stratum_gram(inst: &SncInstance, depth: usize, d: i64) -> Result<Matrix, SteenbrinkError> {
    let top = inst.top_degree(depth);
    let mut blocks = Vec::new();
    for p in inst.pieces_at(depth) {
        let rank = p.rank(d);
        let dual = p.rank(top - d);
        if rank == 0 && dual == 0 {
            continue;
        }
        if d < 0 || d > top || rank != dual {
            return Err(SteenbrinkError::MissingPairing {
                piece: p.id.clone(),
                degree: d,
            });
        }
        blocks.push(p.degree(d as u32).gram.coeffs);
    }
    Ok(Matrix::block_diagonal(&blocks))
}

fn offsets(inst: &SncInstance, depth: usize, d: i64) -> Vec<(String, usize)> {
    let mut at = 0;
    inst.pieces_at(depth)
        .iter()
        .map(|p| {
            let here = at;
            at += p.rank(d);
            (p.id.clone(), here)
        })
        .collect()
}

/// Alternating restriction `ψ: H^d(E(depth)) → H^d(E(depth+1))`.
///
/// The restriction from `E_{J∖j_t}` into `E_J` carries the sign `(−1)^{t+1}`.
pub fn restriction_map(inst: &SncInstance, depth: usize, d: i64) -> Matrix {
    let rows = inst.stratum_rank(depth + 1, d);
    let cols = inst.stratum_rank(depth, d);
    let mut psi = Matrix::zeros(rows, cols);
    if d < 0 || rows == 0 || cols == 0 {
        return psi;
    }
    let row_at = offsets(inst, depth + 1, d);
    let col_at = offsets(inst, depth, d);
    for r in inst.restrictions.iter().filter(|r| r.degree as i64 == d) {
        let (Some((_, c0)), Some((_, r0))) = (
            col_at.iter().find(|(id, _)| *id == r.from),
            row_at.iter().find(|(id, _)| *id == r.to),
        ) else {
            continue;
        };
        let from = inst.piece(&r.from).expect("indexed piece");
        let to = inst.piece(&r.to).expect("indexed piece");
        let Some(t) = to
            .components
            .iter()
            .position(|c| !from.components.contains(c))
        else {
            continue;
        };
        let block = if t % 2 == 0 {
            -&r.matrix
        } else {
            r.matrix.clone()
        };
        let current = psi.block(*r0, *c0, block.rows(), block.cols());
        psi.set_block(*r0, *c0, &(&current + &block));
    }
    psi
}

/// Alternating Gysin `φ: H^d(E(depth+1)) → H^{d+2}(E(depth))`, the negative
/// Poincaré adjoint of `ψ`: `⟨φ s, c⟩ = −⟨s, ψ c⟩`.
pub fn gysin_map(inst: &SncInstance, depth: usize, d: i64) -> Result<Matrix, SteenbrinkError> {
    let rows = inst.stratum_rank(depth, d + 2);
    let cols = inst.stratum_rank(depth + 1, d);
    if rows == 0 || cols == 0 {
        return Ok(Matrix::zeros(rows, cols));
    }
    let dual = inst.top_degree(depth) - d - 2;
    let g_low = stratum_gram(inst, depth, d + 2)?;
    let g_high = stratum_gram(inst, depth + 1, d)?;
    let psi = restriction_map(inst, depth, dual);
    let inv = g_low
        .inverse()
        .ok_or_else(|| SteenbrinkError::MissingPairing {
            piece: format!("E({depth})"),
            degree: d + 2,
        })?;
    Ok(-&(&(&g_high * &psi) * &inv).transpose())
}

/// `(ψ, φ)` at stratum depth `k` and degree `d`.
pub fn alternating_maps(
    inst: &SncInstance,
    k: usize,
    d: i64,
) -> Result<(Matrix, Matrix), SteenbrinkError> {
    Ok((restriction_map(inst, k, d), gysin_map(inst, k, d)?))
}

/// `H^{degree}(E(depth))` sitting in `H^m(Gr_r)` at index `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub p: i32,
    pub depth: usize,
    pub degree: i64,
    pub offset: usize,
    pub rank: usize,
}

/// `H^m(Gr_r) = ⊕_{p ≥ max(0,−r)} H^{m−r−2p}(E(r+2p+1))`, in Tate-twisted coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E1Term {
    pub m: i64,
    pub r: i32,
    pub summands: Vec<Summand>,
    pub dim: usize,
}

impl E1Term {
    pub fn new(inst: &SncInstance, m: i64, r: i32) -> Self {
        let mut summands = Vec::new();
        let mut dim = 0;
        let max_depth = inst.max_depth() as i64;
        let mut p = 0.max(-r);
        loop {
            let depth = (r + 2 * p + 1) as i64;
            let degree = m - r as i64 - 2 * p as i64;
            if depth > max_depth || degree < 0 {
                break;
            }
            if depth >= 1 {
                let rank = inst.stratum_rank(depth as usize, degree);
                if rank > 0 {
                    summands.push(Summand {
                        p,
                        depth: depth as usize,
                        degree,
                        offset: dim,
                        rank,
                    });
                    dim += rank;
                }
            }
            p += 1;
        }
        E1Term {
            m,
            r,
            summands,
            dim,
        }
    }

    pub fn summand(&self, p: i32) -> Option<&Summand> {
        self.summands.iter().find(|s| s.p == p)
    }

    /// Exponent `τ` with basis classes scaled by `(2πi)^τ`.
    pub fn twist(&self, p: i32) -> i32 {
        -(self.r + p)
    }

    /// Hodge types after the `(r+p, r+p)` shift.
    pub fn types(&self, inst: &SncInstance) -> Vec<HodgeType> {
        self.summands
            .iter()
            .flat_map(|s| {
                let k = self.r + s.p;
                stratum_types(inst, s.depth, s.degree)
                    .into_iter()
                    .map(move |(a, b)| (a + k, b + k))
            })
            .collect()
    }

    pub fn conj(&self, inst: &SncInstance) -> Matrix {
        let blocks: Vec<Matrix> = self
            .summands
            .iter()
            .map(|s| stratum_conj(inst, s.depth, s.degree))
            .collect();
        Matrix::block_diagonal(&blocks)
    }

    /// Coordinates of `v` on summand `p` (empty when absent).
    pub fn extract(&self, v: &[Gauss], p: i32) -> Vec<Gauss> {
        self.summand(p)
            .map_or_else(Vec::new, |s| v[s.offset..s.offset + s.rank].to_vec())
    }

    /// Selector `dim × rank` embedding summand `p`.
    pub fn inclusion(&self, p: i32) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.summand(p).map_or(0, |s| s.rank));
        if let Some(s) = self.summand(p) {
            m.set_block(s.offset, 0, &Matrix::identity(s.rank));
        }
        m
    }
}

/// `d1: H^m(Gr_r) → H^{m+1}(Gr_{r−1})`, restriction blocks plus Gysin blocks.
pub fn d1(inst: &SncInstance, m: i64, r: i32) -> Result<Matrix, SteenbrinkError> {
    let source = E1Term::new(inst, m, r);
    let target = E1Term::new(inst, m + 1, r - 1);
    let mut out = Matrix::zeros(target.dim, source.dim);
    for s in &source.summands {
        if let Some(t) = target.summand(s.p + 1) {
            out.set_block(
                t.offset,
                s.offset,
                &restriction_map(inst, s.depth, s.degree),
            );
        }
        if s.depth >= 2 {
            if let Some(t) = target.summand(s.p) {
                out.set_block(t.offset, s.offset, &gysin_map(inst, s.depth - 1, s.degree)?);
            }
        }
    }
    Ok(out)
}

/// `H^{m−1}(Gr_{r+1}) →a H^m(Gr_r) →b H^{m+1}(Gr_{r−1})` computing `Gr_{m+r} H^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightComplex {
    pub m: i64,
    pub w: i64,
    pub prev: E1Term,
    pub mid: E1Term,
    pub next: E1Term,
    pub a: Matrix,
    pub b: Matrix,
}

impl WeightComplex {
    pub fn new(inst: &SncInstance, m: i64, w: i64) -> Result<Self, SteenbrinkError> {
        let r = (w - m) as i32;
        Ok(WeightComplex {
            m,
            w,
            prev: E1Term::new(inst, m - 1, r + 1),
            mid: E1Term::new(inst, m, r),
            next: E1Term::new(inst, m + 1, r - 1),
            a: d1(inst, m - 1, r + 1)?,
            b: d1(inst, m, r)?,
        })
    }

    pub fn is_complex(&self) -> bool {
        (&self.b * &self.a).is_zero()
    }
}

/// The E1 row feeding `H^m`: one complex per weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct E1Page {
    pub m: i64,
    pub complexes: Vec<WeightComplex>,
}

impl E1Page {
    pub fn complex(&self, w: i64) -> Option<&WeightComplex> {
        self.complexes.iter().find(|c| c.w == w)
    }
}

pub fn e1_page(inst: &SncInstance, m: i64) -> Result<E1Page, SteenbrinkError> {
    let n = inst.fiber_dim as i64;
    let weights: Vec<i64> = (m - n..=m + n).collect();
    let complexes = crate::parallel::par_map(weights, |w| WeightComplex::new(inst, m, w))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    if let Some(c) = complexes.iter().find(|c| !c.is_complex()) {
        return Err(SteenbrinkError::NotAComplex { m, w: c.w });
    }
    Ok(E1Page { m, complexes })
}

/// `Gr_w^W H^m` as `ker b / im a`, with a type-homogeneous basis of representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPiece {
    pub complex: WeightComplex,
    pub kernel: Subspace,
    pub image: Subspace,
    /// Representatives in `mid` coordinates, one column per basis class.
    pub reps: Matrix,
    /// `dim × mid.dim`; valid on `kernel`, kills `image`.
    pub projection: Matrix,
    pub types: Vec<HodgeType>,
    /// Antilinear conjugation on the graded basis.
    pub conj: Matrix,
}

impl GradedPiece {
    pub fn from_complex(
        inst: &SncInstance,
        complex: WeightComplex,
    ) -> Result<Self, SteenbrinkError> {
        let mid_types = complex.mid.types(inst);
        let n = complex.mid.dim;
        let kernel = Subspace::kernel(&complex.b);
        let image = Subspace::image(&complex.a);
        let mut distinct: Vec<HodgeType> = mid_types.clone();
        distinct.sort_by_key(|&(p, q)| (-p, q));
        distinct.dedup();
        let mut reps = Matrix::zeros(n, 0);
        let mut projection = Matrix::zeros(0, n);
        let mut types = Vec::new();
        let (mut kdim, mut idim) = (0, 0);
        for t in distinct {
            let idx: Vec<usize> = (0..n).filter(|&i| mid_types[i] == t).collect();
            let coord = Subspace::coordinate(n, idx.iter().copied());
            let z = kernel.intersection(&coord);
            let bnd = image.intersection(&coord);
            kdim += z.dim();
            idim += bnd.dim();
            let q = quotient_map(&z, &bnd)?;
            let select = Matrix::from_fn(n, n, |r, c| {
                if r == c && idx.contains(&r) {
                    Gauss::one()
                } else {
                    Gauss::zero()
                }
            });
            types.extend(std::iter::repeat_n(t, q.dim()));
            reps = reps.hstack(&q.reps);
            projection = projection.vstack(&(&q.projection * &select));
        }
        if kdim != kernel.dim() || idim != image.dim() {
            return Err(SteenbrinkError::HodgeTypeMismatch {
                m: complex.m,
                w: complex.w,
            });
        }
        let mid_conj = complex.mid.conj(inst);
        let conj = &(&projection * &mid_conj) * &reps.conj();
        Ok(GradedPiece {
            complex,
            kernel,
            image,
            reps,
            projection,
            types,
            conj,
        })
    }

    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    pub fn m(&self) -> i64 {
        self.complex.m
    }

    pub fn w(&self) -> i64 {
        self.complex.w
    }

    pub fn rep(&self, j: usize) -> Vec<Gauss> {
        self.reps.column(j)
    }

    pub fn is_cocycle(&self, v: &[Gauss]) -> bool {
        v.len() == self.complex.mid.dim && self.kernel.contains(v)
    }

    /// Class of a cocycle in the graded basis.
    pub fn project(&self, v: &[Gauss]) -> Vec<Gauss> {
        self.projection.mul_vec(v)
    }

    /// Cocycle representing the conjugate of `v`.
    pub fn conj_cocycle(&self, inst: &SncInstance, v: &[Gauss]) -> Vec<Gauss> {
        let conj: Vec<Gauss> = v.iter().map(Gauss::conj).collect();
        self.complex.mid.conj(inst).mul_vec(&conj)
    }
}

pub fn graded_piece(inst: &SncInstance, m: i64, w: i64) -> Result<GradedPiece, SteenbrinkError> {
    let complex = WeightComplex::new(inst, m, w)?;
    if !complex.is_complex() {
        return Err(SteenbrinkError::NotAComplex { m, w });
    }
    GradedPiece::from_complex(inst, complex)
}

/// `(−1)·id` on summands shared by `Gr_w` and `Gr_{w−2}`, in `mid` coordinates.
pub fn monodromy_on_terms(source: &E1Term, target: &E1Term) -> Matrix {
    let mut out = Matrix::zeros(target.dim, source.dim);
    for s in &source.summands {
        if let Some(t) = target.summand(s.p + 1) {
            debug_assert_eq!((t.depth, t.degree), (s.depth, s.degree));
            out.set_block(t.offset, s.offset, &-&Matrix::identity(s.rank));
        }
    }
    out
}

/// `N_gr: Gr_w H^m → Gr_{w−2} H^m` in graded bases.
pub fn graded_monodromy_between(
    source: &GradedPiece,
    target: &GradedPiece,
) -> Result<Matrix, SteenbrinkError> {
    let n_mid = monodromy_on_terms(&source.complex.mid, &target.complex.mid);
    let lift_fails = || SteenbrinkError::Lift {
        m: source.m(),
        w: source.w(),
    };
    if !target.kernel.contains_space(&source.kernel.map(&n_mid)) {
        return Err(lift_fails());
    }
    if !target.image.contains_space(&source.image.map(&n_mid)) {
        return Err(lift_fails());
    }
    Ok(&(&target.projection * &n_mid) * &source.reps)
}

pub fn graded_monodromy(inst: &SncInstance, m: i64, w: i64) -> Result<Matrix, SteenbrinkError> {
    let source = graded_piece(inst, m, w)?;
    let target = graded_piece(inst, m, w - 2)?;
    graded_monodromy_between(&source, &target)
}
