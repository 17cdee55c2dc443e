use std::collections::BTreeMap;

use super::complex::{e1_page, graded_monodromy_between, GradedPiece};
use super::instance::{HodgeType, SncInstance};
use super::pairing::Pairings;
use super::SteenbrinkError;
use crate::exactlinalg::{Filtration, Gauss, Matrix, Subspace};
use crate::mhs::MixedHodge;
use crate::nilpotent::{check_hypothesis_iso, NilpotentOp};

/// `H^m` of the nearby fiber rebuilt as `⊕_w Gr_w`, assuming `E_2` degeneration.
#[derive(Clone, Debug)]
pub struct LimitCohomology {
    pub m: i64,
    /// Ascending weights with nonzero graded pieces.
    pub pieces: Vec<GradedPiece>,
    /// First basis index of each piece.
    pub offsets: Vec<usize>,
    pub types: Vec<HodgeType>,
    pub weights: Vec<i64>,
    pub mhs: MixedHodge,
    pub monodromy: NilpotentOp,
}

impl LimitCohomology {
    pub fn dim(&self) -> usize {
        self.types.len()
    }

    pub fn graded_dims(&self) -> BTreeMap<i64, usize> {
        self.pieces.iter().map(|p| (p.w(), p.dim())).collect()
    }

    pub fn piece(&self, w: i64) -> Option<(usize, &GradedPiece)> {
        self.pieces
            .iter()
            .position(|p| p.w() == w)
            .map(|i| (self.offsets[i], &self.pieces[i]))
    }

    /// Hypothesis-1 check on the assembled graded monodromy.
    pub fn n_iso(&self) -> Result<bool, SteenbrinkError> {
        Ok(check_hypothesis_iso(&self.monodromy, &self.mhs.weight)?)
    }

    /// Bilinear form `Q` on `H^3` from the graded pairings; `None` outside weights 2..4.
    ///
    /// `Q = −⟨,⟩_{33}` on `Gr_3`, `Q(u_4, v_2) = ⟨u,v⟩_{24} = −Q(v_2, u_4)`.
    pub fn intersection_form(&self, inst: &SncInstance) -> Result<Option<Matrix>, SteenbrinkError> {
        if self.m != 3 || self.weights.iter().any(|w| !(2..=4).contains(w)) {
            return Ok(None);
        }
        let pairings = Pairings::new(inst)?;
        let n = self.dim();
        let mut q = Matrix::zeros(n, n);
        if let Some((o3, g3)) = self.piece(3) {
            for i in 0..g3.dim() {
                for j in 0..g3.dim() {
                    let s = pairings.gr33(inst, &g3.rep(i), &g3.rep(j))?;
                    q[(o3 + i, o3 + j)] = -s.coeff;
                }
            }
        }
        if let (Some((o4, g4)), Some((o2, g2))) = (self.piece(4), self.piece(2)) {
            for i in 0..g4.dim() {
                for j in 0..g2.dim() {
                    let s = pairings.gr24(inst, &g4.rep(i), &g2.rep(j))?;
                    q[(o4 + i, o2 + j)] = s.coeff.clone();
                    q[(o2 + j, o4 + i)] = -s.coeff;
                }
            }
        }
        Ok(Some(q))
    }
}

pub fn limit_cohomology(inst: &SncInstance, m: i64) -> Result<LimitCohomology, SteenbrinkError> {
    let page = e1_page(inst, m)?;
    let pieces: Vec<GradedPiece> =
        crate::parallel::par_map(page.complexes, |c| GradedPiece::from_complex(inst, c))
            .into_iter()
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .filter(|p| p.dim() > 0)
            .collect();
    let mut offsets = Vec::new();
    let mut types = Vec::new();
    let mut weights = Vec::new();
    for p in &pieces {
        offsets.push(types.len());
        types.extend(p.types.iter().copied());
        weights.extend(std::iter::repeat_n(p.w(), p.dim()));
    }
    let n = types.len();
    let conj = Matrix::block_diagonal(&pieces.iter().map(|p| p.conj.clone()).collect::<Vec<_>>());
    let mut nmat = Matrix::zeros(n, n);
    for (i, src) in pieces.iter().enumerate() {
        if let Some(j) = pieces.iter().position(|t| t.w() == src.w() - 2) {
            let block = graded_monodromy_between(src, &pieces[j])?;
            nmat.set_block(offsets[j], offsets[i], &block);
        }
    }
    let coords =
        |pred: &dyn Fn(usize) -> bool| Subspace::coordinate(n, (0..n).filter(|&i| pred(i)));
    let w_steps: Vec<(i32, Subspace)> = weights
        .iter()
        .copied()
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .map(|k| (k as i32, coords(&|i| weights[i] <= k)))
        .collect();
    let mut ps: Vec<i32> = types.iter().map(|t| t.0).collect();
    ps.sort_unstable();
    ps.dedup();
    let f_steps: Vec<(i32, Subspace)> = ps
        .iter()
        .map(|&p0| (p0, coords(&|i| types[i].0 >= p0)))
        .collect();
    let weight = if n == 0 {
        Filtration::trivial(0, crate::exactlinalg::Direction::Increasing, m as i32)
    } else {
        Filtration::increasing(n, w_steps)?
    };
    let hodge = if n == 0 {
        Filtration::trivial(0, crate::exactlinalg::Direction::Decreasing, 0)
    } else {
        Filtration::decreasing(n, f_steps)?
    };
    let monodromy = NilpotentOp::new(nmat, m as i32)?;
    Ok(LimitCohomology {
        m,
        pieces,
        offsets,
        types,
        weights,
        mhs: MixedHodge::new(conj, weight, hodge),
        monodromy,
    })
}

/// Betti number `b_m` of the nearby fiber.
pub fn betti(inst: &SncInstance, m: i64) -> Result<usize, SteenbrinkError> {
    Ok(limit_cohomology(inst, m)?.dim())
}

/// The unique `F^n` direction of `H^n`, if one-dimensional.
pub fn top_hodge_vector(lim: &LimitCohomology, n: i32) -> Option<Vec<Gauss>> {
    let idx: Vec<usize> = (0..lim.dim()).filter(|&i| lim.types[i].0 >= n).collect();
    if idx.len() != 1 {
        return None;
    }
    let mut v = vec![Gauss::zero(); lim.dim()];
    v[idx[0]] = Gauss::one();
    Some(v)
}
