//! Plain Gaussian elimination, kept separate from the library's RREF.

use lmhs::exactlinalg::{Gauss, Matrix};

pub fn rank(m: &Matrix) -> usize {
    let mut rows: Vec<Vec<Gauss>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    let mut rank = 0;
    for c in 0..m.cols() {
        let Some(p) = (rank..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][c].inv().expect("nonzero pivot");
        let (top, below) = rows.split_at_mut(rank + 1);
        let pivot = &top[rank];
        for row in below.iter_mut().filter(|row| !row[c].is_zero()) {
            let factor = &row[c] * &inv;
            for k in c..m.cols() {
                let delta = &factor * &pivot[k];
                row[k] = &row[k] - &delta;
            }
        }
        rank += 1;
    }
    rank
}

pub fn is_bijective(m: &Matrix) -> bool {
    m.rows() == m.cols() && rank(m) == m.rows()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranks() {
        assert_eq!(rank(&Matrix::from_ints(&[[1, 2], [2, 4]])), 1);
        assert_eq!(rank(&Matrix::from_ints(&[[0, 1], [1, 0]])), 2);
        assert_eq!(rank(&Matrix::zeros(3, 2)), 0);
    }
}
