//! Direct check of a bigrading against the filtrations it should split.

use lmhs::exactlinalg::Subspace;
use lmhs::mhs::{DeligneSplitting, MixedHodge};

fn span_where(split: &DeligneSplitting, dim: usize, pred: impl Fn(i32, i32) -> bool) -> Subspace {
    let vectors: Vec<_> = split
        .pieces
        .iter()
        .filter(|((p, q), _)| pred(*p, *q))
        .flat_map(|(_, s)| s.vectors())
        .collect();
    Subspace::span_vectors(dim, &vectors)
}

/// Failures of: `H = ⊕ I^{p,q}`, `W_k = ⊕_{p+q≤k}`, `F^p = ⊕_{p'≥p}`, and
/// `I^{p,q} ≡ conj(I^{q,p})` modulo `⊕_{r<p, s<q} I^{r,s}`.
pub fn splitting_failures(m: &MixedHodge, split: &DeligneSplitting) -> Vec<String> {
    let mut out = Vec::new();
    let total: usize = split.pieces.values().map(Subspace::dim).sum();
    if total != m.dim || span_where(split, m.dim, |_, _| true).dim() != m.dim {
        out.push("not a direct sum decomposition".into());
    }
    let (wlo, whi) = m.weight.bounds();
    for k in wlo..=whi {
        if span_where(split, m.dim, |p, q| p + q <= k) != m.w(k) {
            out.push(format!("W_{k}"));
        }
    }
    let (flo, fhi) = m.hodge.bounds();
    for p0 in flo..=fhi {
        if span_where(split, m.dim, |p, _| p >= p0) != m.f(p0) {
            out.push(format!("F^{p0}"));
        }
    }
    for &(p, q) in split.pieces.keys() {
        let lower = span_where(split, m.dim, |r, s| r < p && s < q);
        let own = split.pieces[&(p, q)].sum(&lower);
        let mirrored = split
            .pieces
            .get(&(q, p))
            .map_or_else(|| Subspace::zero(m.dim), |s| s.conj(&m.conj));
        if own != mirrored.sum(&lower) {
            out.push(format!("I^{{{p},{q}}} congruence"));
        }
    }
    out
}
