//! Monodromy logarithm, monodromy weight filtration and the distance index.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::exactlinalg::{Filtration, Gauss, LinalgError, Matrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NilpotentError {
    #[error("NotUnipotent: (T - I)^{0} is nonzero")]
    NotUnipotent(usize),
    #[error("NotNilpotent: N^{0} is nonzero")]
    NotNilpotent(usize),
    #[error("NotReal: N does not commute with the real structure")]
    NotReal,
    #[error("ShapeError: {0}")]
    Shape(String),
    #[error("ZeroVector: a0 must be nonzero")]
    ZeroVector,
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Nilpotent endomorphism with the weight its filtration is centered at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentOp {
    matrix: Matrix,
    center: i32,
}

impl NilpotentOp {
    pub fn new(matrix: Matrix, center: i32) -> Result<Self, NilpotentError> {
        if !matrix.is_square() {
            return Err(NilpotentError::Shape(format!(
                "{}x{} operator",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let n = matrix.rows();
        if !matrix.pow(n as u32).is_zero() {
            return Err(NilpotentError::NotNilpotent(n));
        }
        Ok(NilpotentOp { matrix, center })
    }

    /// Also require `N` to commute with the antilinear real structure `v ↦ J v̄`.
    pub fn new_real(
        matrix: Matrix,
        center: i32,
        real_structure: &Matrix,
    ) -> Result<Self, NilpotentError> {
        let op = NilpotentOp::new(matrix, center)?;
        if &op.matrix * real_structure != real_structure * &op.matrix.conj() {
            return Err(NilpotentError::NotReal);
        }
        Ok(op)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn center(&self) -> i32 {
        self.center
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// Smallest `k` with `N^k = 0`.
    pub fn order(&self) -> usize {
        let mut p = Matrix::identity(self.dim());
        for k in 0..=self.dim() {
            if p.is_zero() {
                return k;
            }
            p = &p * &self.matrix;
        }
        self.dim()
    }

    pub fn apply(&self, v: &[Gauss]) -> Vec<Gauss> {
        self.matrix.mul_vec(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightFiltrationResult {
    pub filtration: Filtration,
    /// Jordan block sizes, largest first.
    pub jordan: Vec<usize>,
}

/// `exp(N)` for nilpotent `N` (finite series).
pub fn exp_nilpotent(n: &Matrix) -> Matrix {
    let dim = n.rows();
    let mut term = Matrix::identity(dim);
    let mut sum = term.clone();
    for k in 1..=dim {
        term = (&term * n).scale(&Gauss::ratio(1, k as i64));
        if term.is_zero() {
            break;
        }
        sum = &sum + &term;
    }
    sum
}

/// `N = log T = -Σ (I - T)^k / k`.
pub fn log_of_unipotent(t: &Matrix, center: i32) -> Result<NilpotentOp, NilpotentError> {
    if !t.is_square() {
        return Err(NilpotentError::Shape(format!(
            "{}x{} monodromy",
            t.rows(),
            t.cols()
        )));
    }
    let dim = t.rows();
    let e = &Matrix::identity(dim) - t;
    if !e.pow(dim as u32).is_zero() {
        return Err(NilpotentError::NotUnipotent(dim));
    }
    let mut power = Matrix::identity(dim);
    let mut log = Matrix::zeros(dim, dim);
    for k in 1..=dim {
        power = &power * &e;
        if power.is_zero() {
            break;
        }
        log = &log - &power.scale(&Gauss::ratio(1, k as i64));
    }
    NilpotentOp::new(log, center)
}

/// Jordan block sizes from the ranks of powers.
pub fn jordan_sizes(n: &Matrix) -> Vec<usize> {
    let dim = n.rows();
    let mut ranks = vec![dim];
    let mut p = Matrix::identity(dim);
    while *ranks.last().unwrap() > 0 {
        p = &p * n;
        ranks.push(p.rank());
    }
    // blocks of size ≥ k: ranks[k-1] - ranks[k]
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut sizes = Vec::new();
    for k in (1..=at_least.len()).rev() {
        let exact = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        sizes.extend(std::iter::repeat_n(k, exact));
    }
    sizes
}

/// Weight filtration of `N` on `A/B`, centered at 0, pulled back into `A`.
fn relative_weight(a: &Subspace, b: &Subspace, n: &Matrix, out: &mut BTreeMap<i32, Subspace>) {
    if a == b {
        return;
    }
    let mut l = 0usize;
    let mut image = a.clone();
    loop {
        let next = image.map(n);
        if b.contains_space(&next) {
            break;
        }
        image = next;
        l += 1;
    }
    let li = l as i32;
    out.insert(li, a.clone());
    out.insert(-li - 1, b.clone());
    if l == 0 {
        return;
    }
    let nl = n.pow(l as u32);
    let kernel = a.intersection(&b.preimage(&nl));
    let low = image.sum(b);
    out.insert(li - 1, kernel.clone());
    out.insert(-li, low.clone());
    relative_weight(&kernel, &low, n, out);
}

pub fn weight_filtration(n: &NilpotentOp) -> WeightFiltrationResult {
    let dim = n.dim();
    let mut steps = BTreeMap::new();
    relative_weight(
        &Subspace::full(dim),
        &Subspace::zero(dim),
        n.matrix(),
        &mut steps,
    );
    if steps.is_empty() {
        steps.insert(n.center(), Subspace::full(dim));
    }
    let filtration =
        Filtration::increasing(dim, steps.into_iter().map(|(k, s)| (k + n.center(), s)))
            .expect("relative construction yields a nested exhaustive filtration");
    WeightFiltrationResult {
        filtration,
        jordan: jordan_sizes(n.matrix()),
    }
}

/// Whether `N W_k ⊆ W_{k-2}` and each `N^k: Gr_{n+k} → Gr_{n-k}` is bijective.
pub fn check_hypothesis_iso(n: &NilpotentOp, w: &Filtration) -> Result<bool, NilpotentError> {
    if w.ambient() != n.dim() {
        return Err(NilpotentError::Shape(format!(
            "filtration on dimension {} for operator on {}",
            w.ambient(),
            n.dim()
        )));
    }
    let (lo, hi) = w.bounds();
    if !(lo..=hi).all(|k| w.step(k - 2).contains_space(&w.step(k).map(n.matrix()))) {
        return Ok(false);
    }
    let c = n.center();
    let reach = (hi - c).max(c - lo).max(0);
    for k in 0..=reach {
        let top = w.graded(c + k);
        let bottom = w.graded(c - k);
        if top.dim() != bottom.dim() {
            return Ok(false);
        }
        if top.dim() == 0 {
            continue;
        }
        let induced = &(&bottom.projection * &n.matrix().pow(k as u32)) * &top.reps;
        if induced.rank() != top.dim() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `d = min{k : N^{k+1} a0 = 0}`.
pub fn distance_index(a0: &[Gauss], n: &NilpotentOp) -> Result<usize, NilpotentError> {
    if a0.len() != n.dim() {
        return Err(NilpotentError::Shape(format!(
            "vector of length {} for operator on {}",
            a0.len(),
            n.dim()
        )));
    }
    if a0.iter().all(Gauss::is_zero) {
        return Err(NilpotentError::ZeroVector);
    }
    let mut v = a0.to_vec();
    let mut d = 0;
    loop {
        v = n.apply(&v);
        if v.iter().all(Gauss::is_zero) {
            return Ok(d);
        }
        d += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn log_of_identity_is_zero() {
        let n = log_of_unipotent(&Matrix::identity(3), 3).unwrap();
        assert!(n.matrix().is_zero());
    }

    #[test]
    fn log_of_elementary_blocks() {
        let n = log_of_unipotent(&Matrix::from_ints(&[[1, 1], [0, 1]]), 1).unwrap();
        assert_eq!(*n.matrix(), Matrix::from_ints(&[[0, 1], [0, 0]]));
        let t = Matrix::from_ints(&[[1, 1, 0], [0, 1, 1], [0, 0, 1]]);
        let n = log_of_unipotent(&t, 2).unwrap();
        let expected = Matrix::from_rows(vec![
            vec![Gauss::zero(), Gauss::one(), Gauss::ratio(-1, 2)],
            vec![Gauss::zero(), Gauss::zero(), Gauss::one()],
            vec![Gauss::zero(), Gauss::zero(), Gauss::zero()],
        ]);
        assert_eq!(*n.matrix(), expected);
        assert_eq!(exp_nilpotent(n.matrix()), t);
    }

    #[test]
    fn non_unipotent_rejected() {
        let t = Matrix::from_ints(&[[2, 0], [0, 1]]);
        assert_eq!(
            log_of_unipotent(&t, 0),
            Err(NilpotentError::NotUnipotent(2))
        );
    }

    #[test]
    fn zero_operator_concentrates_at_center() {
        let n = NilpotentOp::new(Matrix::zeros(2, 2), 3).unwrap();
        let w = weight_filtration(&n).filtration;
        assert!(w.step(3).is_full());
        assert!(w.step(2).is_zero());
        assert!(check_hypothesis_iso(&n, &w).unwrap());
    }

    #[test]
    fn size_two_block_center_three() {
        let n = NilpotentOp::new(Matrix::from_ints(&[[0, 1], [0, 0]]), 3).unwrap();
        let r = weight_filtration(&n);
        assert_eq!(r.filtration.step(2), Subspace::coordinate(2, [0]));
        assert_eq!(r.filtration.step(3), Subspace::coordinate(2, [0]));
        assert!(r.filtration.step(4).is_full());
        assert!(r.filtration.step(1).is_zero());
        assert_eq!(r.jordan, vec![2]);
    }

    #[test]
    fn blocks_three_one_center_two() {
        // e0 <- e1 <- e2, f
        let mut m = Matrix::zeros(4, 4);
        m[(0, 1)] = Gauss::one();
        m[(1, 2)] = Gauss::one();
        let n = NilpotentOp::new(m, 2).unwrap();
        let r = weight_filtration(&n);
        let w = &r.filtration;
        assert_eq!(w.step(0), Subspace::coordinate(4, [0]));
        assert_eq!(w.step(2), Subspace::coordinate(4, [0, 1, 3]));
        assert!(w.step(4).is_full());
        assert_eq!(r.jordan, vec![3, 1]);
        assert!(check_hypothesis_iso(&n, w).unwrap());
        assert!(!check_hypothesis_iso(&n, &w.shift(1)).unwrap());
        let a0 = vec![Gauss::zero(), Gauss::zero(), Gauss::one(), Gauss::one()];
        assert_eq!(distance_index(&a0, &n).unwrap(), 2);
    }

    #[test]
    fn distance_index_edge_cases() {
        let zero = NilpotentOp::new(Matrix::zeros(2, 2), 1).unwrap();
        assert_eq!(
            distance_index(&[Gauss::one(), Gauss::one()], &zero).unwrap(),
            0
        );
        assert_eq!(
            distance_index(&[Gauss::zero(), Gauss::zero()], &zero),
            Err(NilpotentError::ZeroVector)
        );
        let j = NilpotentOp::new(Matrix::from_ints(&[[0, 1], [0, 0]]), 1).unwrap();
        assert_eq!(
            distance_index(&[Gauss::zero(), Gauss::one()], &j).unwrap(),
            1
        );
    }

    #[test]
    fn shape_mismatch_is_an_error() {
        let n = NilpotentOp::new(Matrix::zeros(2, 2), 1).unwrap();
        let w = Filtration::trivial(3, crate::exactlinalg::Direction::Increasing, 1);
        assert!(matches!(
            check_hypothesis_iso(&n, &w),
            Err(NilpotentError::Shape(_))
        ));
    }
}
