//! Weight filtration read off a Jordan basis: in a block `b_0 ← b_1 ← … ← b_{s−1}`
//! of `N` the vector `b_j` has weight `center − s + 1 + 2j`.

use lmhs::exactlinalg::{Filtration, Gauss, Matrix, Subspace};

use crate::rank::rank;

/// Partitions of `n`, parts non-increasing.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Every Jordan profile on dimensions `1..=max_dim`.
pub fn profiles_up_to(max_dim: usize) -> Vec<Vec<usize>> {
    (1..=max_dim).flat_map(partitions).collect()
}

pub fn jordan_matrix(profile: &[usize]) -> Matrix {
    let n: usize = profile.iter().sum();
    let mut j = Matrix::zeros(n, n);
    let mut offset = 0;
    for &s in profile {
        for k in 1..s {
            j[(offset + k - 1, offset + k)] = Gauss::one();
        }
        offset += s;
    }
    j
}

pub fn jordan_weights(profile: &[usize], center: i32) -> Vec<i32> {
    profile
        .iter()
        .flat_map(|&s| (0..s).map(move |j| center - s as i32 + 1 + 2 * j as i32))
        .collect()
}

fn coordinate_filtration(weights: &[i32], basis: &Matrix) -> Filtration {
    let n = weights.len();
    let (lo, hi) = match (weights.iter().min(), weights.iter().max()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        _ => (0, 0),
    };
    let steps = (lo..=hi).map(|k| {
        let cols: Vec<Vec<Gauss>> = (0..n)
            .filter(|&i| weights[i] <= k)
            .map(|i| basis.column(i))
            .collect();
        (k, Subspace::span_vectors(n, &cols))
    });
    Filtration::increasing(n, steps).expect("nested coordinate filtration")
}

/// `N = g J g⁻¹` together with the filtration predicted by the Jordan basis `g e_i`.
#[derive(Clone, Debug)]
pub struct JordanModel {
    pub profile: Vec<usize>,
    pub center: i32,
    pub basis: Matrix,
    pub n: Matrix,
}

impl JordanModel {
    pub fn new(profile: &[usize], basis: Matrix, center: i32) -> Self {
        let inv = basis.inverse().expect("invertible change of basis");
        let n = &(&basis * &jordan_matrix(profile)) * &inv;
        JordanModel {
            profile: profile.to_vec(),
            center,
            basis,
            n,
        }
    }

    pub fn weights(&self) -> Vec<i32> {
        jordan_weights(&self.profile, self.center)
    }

    pub fn filtration(&self) -> Filtration {
        coordinate_filtration(&self.weights(), &self.basis)
    }
}

/// Whether the coordinate filtration with these weights satisfies `N W_k ⊆ W_{k−2}`
/// and has `N^k: Gr_{c+k} → Gr_{c−k}` bijective, checked directly on coordinates.
fn is_monodromy_weight(n: &Matrix, weights: &[i32], center: i32) -> bool {
    let dim = weights.len();
    for c in 0..dim {
        for r in 0..dim {
            if !n[(r, c)].is_zero() && weights[r] > weights[c] - 2 {
                return false;
            }
        }
    }
    let reach = weights
        .iter()
        .map(|w| (w - center).abs())
        .max()
        .unwrap_or(0);
    (0..=reach).all(|k| {
        let top: Vec<usize> = (0..dim).filter(|&i| weights[i] == center + k).collect();
        let bottom: Vec<usize> = (0..dim).filter(|&i| weights[i] == center - k).collect();
        if top.len() != bottom.len() {
            return false;
        }
        let nk = n.pow(k as u32);
        rank(&nk.submatrix(&bottom, &top)) == top.len()
    })
}

/// All weight assignments on the standard basis, in `[c − dim + 1, c + dim − 1]`,
/// whose coordinate filtration is a monodromy weight filtration of `n`.
pub fn coordinate_weight_filtrations(n: &Matrix, center: i32) -> Vec<Vec<i32>> {
    let dim = n.rows();
    let span = dim as i32 - 1;
    let choices: Vec<i32> = (center - span..=center + span).collect();
    let mut out = Vec::new();
    let mut current = vec![0; dim];
    fn go(
        i: usize,
        choices: &[i32],
        current: &mut Vec<i32>,
        n: &Matrix,
        center: i32,
        out: &mut Vec<Vec<i32>>,
    ) {
        if i == current.len() {
            if is_monodromy_weight(n, current, center) {
                out.push(current.clone());
            }
            return;
        }
        for &w in choices {
            current[i] = w;
            go(i + 1, choices, current, n, center, out);
        }
    }
    go(0, &choices, &mut current, n, center, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| partitions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11]);
    }

    #[test]
    fn single_block_weights() {
        assert_eq!(jordan_weights(&[3], 2), vec![0, 2, 4]);
        assert_eq!(jordan_weights(&[2, 1], 3), vec![2, 4, 3]);
    }
}
