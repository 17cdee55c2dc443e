//! Seeded generators of valid random inputs for property suites.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::exactlinalg::{Filtration, Gauss, Matrix, Subspace};
use crate::mhs::MixedHodge;

pub use rand::SeedableRng;

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_int(rng: &mut SampleRng, bound: i64) -> i64 {
    rng.gen_range(-bound..=bound)
}

pub fn gauss(rng: &mut SampleRng, bound: i64) -> Gauss {
    let den = rng.gen_range(1..=3);
    Gauss::new(
        crate::exactlinalg::rat(small_int(rng, bound), den),
        crate::exactlinalg::rat(small_int(rng, bound), den),
    )
}

pub fn real_gauss(rng: &mut SampleRng, bound: i64) -> Gauss {
    let den = rng.gen_range(1..=3);
    Gauss::ratio(small_int(rng, bound), den)
}

pub fn matrix(rng: &mut SampleRng, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| gauss(rng, bound))
}

pub fn real_matrix(rng: &mut SampleRng, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| real_gauss(rng, bound))
}

/// Random invertible matrix (rejection sampling).
pub fn invertible(rng: &mut SampleRng, n: usize, bound: i64) -> Matrix {
    loop {
        let m = matrix(rng, n, n, bound);
        if !m.det().is_zero() {
            return m;
        }
    }
}

pub fn real_invertible(rng: &mut SampleRng, n: usize, bound: i64) -> Matrix {
    loop {
        let m = real_matrix(rng, n, n, bound);
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Random hermitian matrix.
pub fn hermitian(rng: &mut SampleRng, n: usize, bound: i64) -> Matrix {
    let a = matrix(rng, n, n, bound);
    &a + &a.adjoint()
}

/// Symmetric Hodge numbers `h^{p,q} = h^{q,p}` with `0 ≤ p,q ≤ 3` and total at most `max_dim`.
pub fn hodge_numbers(rng: &mut SampleRng, max_dim: usize) -> BTreeMap<(i32, i32), usize> {
    let mut slots: Vec<(i32, i32)> = (0..=3).flat_map(|p| (p..=3).map(move |q| (p, q))).collect();
    slots.shuffle(rng);
    let mut out = BTreeMap::new();
    let mut total = 0;
    for (p, q) in slots {
        let cost = if p == q { 1 } else { 2 };
        if total + cost > max_dim || rng.gen_bool(0.5) {
            continue;
        }
        total += cost;
        *out.entry((p, q)).or_insert(0) += 1;
        if p != q {
            *out.entry((q, p)).or_insert(0) += 1;
        }
    }
    if out.is_empty() {
        out.insert((0, 0), 1);
    }
    out
}

/// A valid mixed Hodge structure on dimension at most `max_dim`.
///
/// Starts from an ℝ-split model, twists the Hodge filtration by a unipotent map
/// lowering both Hodge indices, then applies a random complex change of basis.
pub fn random_mhs(rng: &mut SampleRng, max_dim: usize) -> MixedHodge {
    let numbers = hodge_numbers(rng, max_dim);
    // basis layout: one index block per (p,q); conj pairs (p,q) ↔ (q,p) slot by slot
    let mut offsets = BTreeMap::new();
    let mut n = 0;
    for (&pq, &h) in &numbers {
        offsets.insert(pq, n);
        n += h;
    }
    let mut conj = Matrix::zeros(n, n);
    for (&(p, q), &h) in &numbers {
        for k in 0..h {
            conj[(offsets[&(q, p)] + k, offsets[&(p, q)] + k)] = Gauss::one();
        }
    }
    let mut twist = Matrix::identity(n);
    for (&(p, q), &h) in &numbers {
        for (&(r, s), &hr) in &numbers {
            if r < p && s < q {
                for a in 0..h {
                    for b in 0..hr {
                        twist[(offsets[&(r, s)] + b, offsets[&(p, q)] + a)] = gauss(rng, 2);
                    }
                }
            }
        }
    }
    let coords = |pred: &dyn Fn(i32, i32) -> bool| -> Vec<usize> {
        let mut out = Vec::new();
        for (pq, &h) in &numbers {
            if pred(pq.0, pq.1) {
                out.extend((0..h).map(|k| offsets[pq] + k));
            }
        }
        out
    };
    let change = invertible(rng, n, 2);
    let weights: Vec<i32> = (-1..=6).collect();
    let w_steps: Vec<(i32, Subspace)> = weights
        .iter()
        .map(|&k| {
            (
                k,
                Subspace::coordinate(n, coords(&|p, q| p + q <= k)).map(&change),
            )
        })
        .collect();
    let f_steps: Vec<(i32, Subspace)> = (0..=4)
        .map(|p0| {
            let split = Subspace::coordinate(n, coords(&|p, _| p >= p0));
            (p0, split.map(&twist).map(&change))
        })
        .collect();
    let new_conj = &(&change * &conj) * &change.conj().inverse().expect("invertible");
    MixedHodge::new(
        new_conj,
        Filtration::increasing(n, w_steps).expect("nested weights"),
        Filtration::decreasing(n, f_steps).expect("nested Hodge filtration"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mhs::validate_mhs;

    #[test]
    fn random_mhs_is_valid() {
        let mut r = rng(7);
        for _ in 0..10 {
            let m = random_mhs(&mut r, 6);
            assert!(validate_mhs(&m).is_empty());
            assert!(m.dim <= 6);
        }
    }
}
