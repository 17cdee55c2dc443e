use std::collections::BTreeMap;

use crate::exactlinalg::{Gauss, Matrix};
use crate::steenbrink::{DegreeData, HodgeType, Piece, Restriction};

pub(crate) fn g(n: i64) -> Gauss {
    Gauss::int(n)
}

/// `n` real classes of type `(p,p)` with the given Gram into the top degree.
pub(crate) fn real_degree(n: usize, p: i32, gram: Matrix) -> DegreeData {
    DegreeData::from_types(&vec![(p, p); n], Matrix::identity(n), gram)
}

/// `k` classes of type `(p,q)` followed by their `k` conjugates, `p > q`.
pub(crate) fn paired_types(k: usize, p: i32, q: i32) -> (Vec<HodgeType>, Matrix) {
    let mut types = vec![(p, q); k];
    types.extend(vec![(q, p); k]);
    let mut conj = Matrix::zeros(2 * k, 2 * k);
    for j in 0..k {
        conj[(k + j, j)] = Gauss::one();
        conj[(j, k + j)] = Gauss::one();
    }
    (types, conj)
}

pub(crate) fn piece(id: &str, components: Vec<usize>, degrees: Vec<(u32, DegreeData)>) -> Piece {
    Piece {
        id: id.to_string(),
        components,
        cohomology: degrees.into_iter().collect::<BTreeMap<_, _>>(),
    }
}

pub(crate) fn restriction(from: &str, to: &str, degree: u32, matrix: Matrix) -> Restriction {
    Restriction {
        from: from.to_string(),
        to: to.to_string(),
        degree,
        matrix,
    }
}

pub(crate) fn point(p: i32) -> DegreeData {
    real_degree(1, p, Matrix::identity(1))
}

pub(crate) fn diag(entries: &[i64]) -> Matrix {
    Matrix::diagonal(&entries.iter().map(|&e| g(e)).collect::<Vec<_>>())
}
