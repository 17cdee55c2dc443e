//! Mixed Hodge structures, their validation and the Deligne splitting.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactlinalg::{
    check_opposed, Direction, Filtration, Gauss, LinalgError, Matrix, Subspace,
};

/// `(H, W, F)` with the real structure `v ↦ J v̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedHodge {
    pub dim: usize,
    pub conj: Matrix,
    pub weight: Filtration,
    pub hodge: Filtration,
}

/// One failed axiom, as data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "failure", rename_all = "snake_case")]
pub enum MhsFailure {
    Shape { detail: String },
    ConjugationNotInvolution,
    WeightNotReal { k: i32 },
    NotOpposed { weight: i32 },
}

impl fmt::Display for MhsFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MhsFailure::Shape { detail } => write!(f, "shape: {detail}"),
            MhsFailure::ConjugationNotInvolution => write!(f, "conjugation is not an involution"),
            MhsFailure::WeightNotReal { k } => write!(f, "W not real (W_{k})"),
            MhsFailure::NotOpposed { weight } => {
                write!(f, "F does not induce a pure Hodge structure on Gr_{weight}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MhsError {
    #[error("ValidationError: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Validation(Vec<MhsFailure>),
    #[error("SplittingError: {0}")]
    Splitting(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

impl MixedHodge {
    pub fn new(conj: Matrix, weight: Filtration, hodge: Filtration) -> Self {
        MixedHodge {
            dim: conj.rows(),
            conj,
            weight,
            hodge,
        }
    }

    /// Induced antilinear real structure on `Gr_l^W` in quotient coordinates.
    pub fn graded_conj(&self, l: i32) -> Matrix {
        let g = self.weight.graded(l);
        &(&g.projection * &self.conj) * &g.reps.conj()
    }

    /// Induced Hodge filtration on `Gr_l^W` in quotient coordinates.
    pub fn graded_hodge(&self, l: i32) -> Filtration {
        let g = self.weight.graded(l);
        let wl = self.weight.step(l);
        let (lo, hi) = self.hodge.bounds();
        let steps = (lo..=hi).map(|p| {
            let image =
                Subspace::span(&(&g.projection * self.hodge.step(p).intersection(&wl).basis()));
            (p, image)
        });
        Filtration::decreasing(g.dim(), steps).expect("induced filtration")
    }

    /// Weights with nonzero graded piece.
    pub fn weights(&self) -> Vec<i32> {
        self.weight.jumps()
    }

    pub fn f(&self, p: i32) -> Subspace {
        self.hodge.step(p)
    }

    pub fn w(&self, k: i32) -> Subspace {
        self.weight.step(k)
    }

    /// `conj(F^p)`
    pub fn fbar(&self, p: i32) -> Subspace {
        self.hodge.step(p).conj(&self.conj)
    }
}

pub fn validate_mhs(m: &MixedHodge) -> Vec<MhsFailure> {
    let mut failures = Vec::new();
    let n = m.dim;
    if m.conj.rows() != n || m.conj.cols() != n || m.weight.ambient() != n || m.hodge.ambient() != n
    {
        failures.push(MhsFailure::Shape {
            detail: format!(
                "dim {n} with conjugation {}x{}",
                m.conj.rows(),
                m.conj.cols()
            ),
        });
        return failures;
    }
    if m.weight.direction() != Direction::Increasing || m.hodge.direction() != Direction::Decreasing
    {
        failures.push(MhsFailure::Shape {
            detail: "W must increase and F must decrease".into(),
        });
        return failures;
    }
    if &m.conj * &m.conj.conj() != Matrix::identity(n) {
        failures.push(MhsFailure::ConjugationNotInvolution);
        return failures;
    }
    for (&k, s) in m.weight.steps() {
        if !s.is_real(&m.conj) {
            failures.push(MhsFailure::WeightNotReal { k });
        }
    }
    if !failures.is_empty() {
        return failures;
    }
    for l in m.weights() {
        if !check_opposed(&m.graded_hodge(l), &m.graded_conj(l), l) {
            failures.push(MhsFailure::NotOpposed { weight: l });
        }
    }
    failures
}

/// Bigrading `I^{p,q}` of a mixed Hodge structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeligneSplitting {
    pub dim: usize,
    pub pieces: BTreeMap<(i32, i32), Subspace>,
}

impl DeligneSplitting {
    pub fn piece(&self, p: i32, q: i32) -> Subspace {
        self.pieces
            .get(&(p, q))
            .cloned()
            .unwrap_or_else(|| Subspace::zero(self.dim))
    }

    pub fn sum_where(&self, pred: impl Fn(i32, i32) -> bool) -> Subspace {
        self.pieces
            .iter()
            .filter(|(&(p, q), _)| pred(p, q))
            .fold(Subspace::zero(self.dim), |acc, (_, s)| acc.sum(s))
    }

    pub fn hodge_numbers(&self) -> BTreeMap<(i32, i32), usize> {
        self.pieces.iter().map(|(&k, s)| (k, s.dim())).collect()
    }

    /// Direct sum, recovery of `W` and `F`, and the congruence with `conj(I^{q,p})`.
    pub fn check(&self, m: &MixedHodge) -> Result<(), String> {
        let total: usize = self.pieces.values().map(Subspace::dim).sum();
        if total != m.dim || !self.sum_where(|_, _| true).is_full() {
            return Err(format!("pieces of total dimension {total} do not span H"));
        }
        let (wlo, whi) = m.weight.bounds();
        for k in wlo..=whi {
            if self.sum_where(|p, q| p + q <= k) != m.w(k) {
                return Err(format!("W_{k} is not recovered"));
            }
        }
        let (flo, fhi) = m.hodge.bounds();
        for p0 in flo..=fhi {
            if self.sum_where(|p, _| p >= p0) != m.f(p0) {
                return Err(format!("F^{p0} is not recovered"));
            }
        }
        for &(p, q) in self.pieces.keys() {
            let lower = self.sum_where(|r, s| r < p && s < q);
            let lhs = self.piece(p, q).sum(&lower);
            let rhs = self.piece(q, p).conj(&m.conj).sum(&lower);
            if lhs != rhs {
                return Err(format!(
                    "I^{{{p},{q}}} is not congruent to conj(I^{{{q},{p}}})"
                ));
            }
        }
        Ok(())
    }
}

/// `I^{p,q} = F^p ∩ W_{p+q} ∩ (F̄^q ∩ W_{p+q} + Σ_{j≥2} F̄^{q−j+1} ∩ W_{p+q−j})`.
pub fn deligne_splitting(m: &MixedHodge) -> Result<DeligneSplitting, MhsError> {
    let failures = validate_mhs(m);
    if !failures.is_empty() {
        return Err(MhsError::Validation(failures));
    }
    let (flo, fhi) = m.hodge.bounds();
    let (wlo, whi) = m.weight.bounds();
    let fbar: BTreeMap<i32, Subspace> = (flo..=fhi).map(|p| (p, m.fbar(p))).collect();
    let w: BTreeMap<i32, Subspace> = (wlo..=whi).map(|k| (k, m.w(k))).collect();
    let fbar_at = |p: i32| fbar.get(&p.clamp(flo, fhi)).expect("clamped index");
    let mut fbar_w: BTreeMap<(i32, i32), Subspace> = BTreeMap::new();
    let mut fbar_cap_w = |q: i32, k: i32| -> Subspace {
        let q = q.clamp(flo, fhi);
        fbar_w
            .entry((q, k))
            .or_insert_with(|| fbar_at(q).intersection(&w[&k]))
            .clone()
    };
    let mut pieces = BTreeMap::new();
    for l in m.weights() {
        let wl = &w[&l];
        for p in flo + 1..fhi {
            let outer = m.f(p).intersection(wl);
            if outer.is_zero() {
                continue;
            }
            let q = l - p;
            let mut inner = fbar_cap_w(q, l);
            let mut j = 2;
            while l - j >= wlo {
                inner = inner.sum(&fbar_cap_w(q - j + 1, l - j));
                j += 1;
            }
            let piece = outer.intersection(&inner);
            if !piece.is_zero() {
                pieces.insert((p, q), piece);
            }
        }
    }
    let split = DeligneSplitting { dim: m.dim, pieces };
    split.check(m).map_err(MhsError::Splitting)?;
    Ok(split)
}

/// `f(W_k) ⊆ W_{k+2r}` and `f(F^p) ⊆ F^{p+r}`.
pub fn is_morphism_of_type(f: &Matrix, source: &MixedHodge, target: &MixedHodge, r: i32) -> bool {
    if f.cols() != source.dim || f.rows() != target.dim {
        return false;
    }
    let (wlo, whi) = source.weight.bounds();
    let (flo, fhi) = source.hodge.bounds();
    (wlo..=whi).all(|k| target.w(k + 2 * r).contains_space(&source.w(k).map(f)))
        && (flo..=fhi).all(|p| target.f(p + r).contains_space(&source.f(p).map(f)))
}

#[derive(Serialize, Deserialize)]
struct MhsJson {
    dim: usize,
    conjugation: Matrix,
    #[serde(rename = "W")]
    weight: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(rename = "F")]
    hodge: BTreeMap<String, Vec<Vec<String>>>,
}

fn steps_to_json(f: &Filtration) -> BTreeMap<String, Vec<Vec<String>>> {
    f.steps()
        .iter()
        .map(|(k, s)| {
            let vecs = s
                .vectors()
                .iter()
                .map(|v| v.iter().map(ToString::to_string).collect())
                .collect();
            (k.to_string(), vecs)
        })
        .collect()
}

fn steps_from_json(
    dim: usize,
    raw: &BTreeMap<String, Vec<Vec<String>>>,
) -> Result<BTreeMap<i32, Subspace>, LinalgError> {
    raw.iter()
        .map(|(k, vecs)| {
            let k: i32 = k
                .parse()
                .map_err(|_| LinalgError::Parse(format!("bad filtration index '{k}'")))?;
            let parsed = vecs
                .iter()
                .map(|v| {
                    v.iter()
                        .map(|s| s.parse::<Gauss>())
                        .collect::<Result<Vec<_>, _>>()
                })
                .collect::<Result<Vec<_>, _>>()?;
            if parsed.iter().any(|v| v.len() != dim) {
                return Err(LinalgError::Shape(format!(
                    "basis vector length differs from dim {dim}"
                )));
            }
            Ok((k, Subspace::span_vectors(dim, &parsed)))
        })
        .collect()
}

impl MixedHodge {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(MhsJson {
            dim: self.dim,
            conjugation: self.conj.clone(),
            weight: steps_to_json(&self.weight),
            hodge: steps_to_json(&self.hodge),
        })
        .expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, LinalgError> {
        let raw: MhsJson =
            serde_json::from_value(value.clone()).map_err(|e| LinalgError::Parse(e.to_string()))?;
        let weight = Filtration::increasing(raw.dim, steps_from_json(raw.dim, &raw.weight)?)?;
        let hodge = Filtration::decreasing(raw.dim, steps_from_json(raw.dim, &raw.hodge)?)?;
        let conj = if raw.dim == 0 {
            Matrix::zeros(0, 0)
        } else {
            raw.conjugation
        };
        Ok(MixedHodge::new(conj, weight, hodge))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hodge_tate() -> MixedHodge {
        let w = Filtration::increasing(
            2,
            [(0, Subspace::coordinate(2, [0])), (2, Subspace::full(2))],
        )
        .unwrap();
        let f1 = Subspace::span_vectors(2, &[vec![Gauss::i(), Gauss::one()]]);
        let f = Filtration::decreasing(2, [(0, Subspace::full(2)), (1, f1)]).unwrap();
        MixedHodge::new(Matrix::identity(2), w, f)
    }

    #[test]
    fn hodge_tate_example_valid_and_split() {
        let m = hodge_tate();
        assert!(validate_mhs(&m).is_empty());
        let s = deligne_splitting(&m).unwrap();
        assert_eq!(s.piece(1, 1), m.f(1));
        assert_eq!(s.piece(0, 0), m.w(0));
        assert_eq!(s.pieces.len(), 2);
    }

    #[test]
    fn non_real_weight_reported() {
        let line = Subspace::span_vectors(2, &[vec![Gauss::one(), Gauss::i()]]);
        let w = Filtration::increasing(2, [(0, line), (2, Subspace::full(2))]).unwrap();
        let f = Filtration::trivial(2, Direction::Decreasing, 0);
        let m = MixedHodge::new(Matrix::identity(2), w, f);
        assert_eq!(validate_mhs(&m), vec![MhsFailure::WeightNotReal { k: 0 }]);
        assert!(matches!(
            deligne_splitting(&m),
            Err(MhsError::Validation(_))
        ));
        assert_eq!(
            MhsFailure::WeightNotReal { k: 0 }.to_string(),
            "W not real (W_0)"
        );
    }

    #[test]
    fn pure_structure_splits_into_hodge_pieces() {
        let f1 = Subspace::span_vectors(2, &[vec![Gauss::one(), Gauss::i()]]);
        let f = Filtration::decreasing(2, [(0, Subspace::full(2)), (1, f1.clone())]).unwrap();
        let w = Filtration::trivial(2, Direction::Increasing, 1);
        let m = MixedHodge::new(Matrix::identity(2), w, f);
        let s = deligne_splitting(&m).unwrap();
        assert_eq!(s.piece(1, 0), f1);
        assert_eq!(s.piece(0, 1), f1.conj(&Matrix::identity(2)));
    }

    #[test]
    fn morphism_types() {
        let m = hodge_tate();
        assert!(is_morphism_of_type(&Matrix::zeros(2, 2), &m, &m, 5));
        assert!(is_morphism_of_type(&Matrix::identity(2), &m, &m, 0));
        assert!(!is_morphism_of_type(&Matrix::identity(2), &m, &m, 1));
    }

    #[test]
    fn json_round_trip() {
        let m = hodge_tate();
        let back = MixedHodge::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
    }
}
