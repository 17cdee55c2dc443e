use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ExactScalar, Gauss, LinalgError};

/// Dense matrix over ℚ(i), row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Gauss>,
}

/// Result of a row reduction: reduced matrix and pivot columns.
pub struct Rref {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Gauss::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = Gauss::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Gauss) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Gauss>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged rows");
        Matrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Integer matrix literal; every row must have the same length.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| Gauss::int(x)).collect())
                .collect(),
        )
    }

    /// Columns given as vectors of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Gauss>]) -> Self {
        let mut m = Matrix::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (r, x) in col.iter().enumerate() {
                m[(r, c)] = x.clone();
            }
        }
        m
    }

    pub fn column_vector(v: &[Gauss]) -> Self {
        Matrix::from_columns(v.len(), &[v.to_vec()])
    }

    pub fn diagonal(entries: &[Gauss]) -> Self {
        let mut m = Matrix::zeros(entries.len(), entries.len());
        for (k, x) in entries.iter().enumerate() {
            m[(k, k)] = x.clone();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Gauss::is_zero)
    }

    pub fn row(&self, r: usize) -> &[Gauss] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Gauss> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn columns(&self) -> impl Iterator<Item = Vec<Gauss>> + '_ {
        (0..self.cols).map(move |c| self.column(c))
    }

    pub fn entries(&self) -> impl Iterator<Item = &Gauss> {
        self.data.iter()
    }

    pub fn map(&self, f: impl Fn(&Gauss) -> Gauss) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    pub fn conj(&self) -> Matrix {
        self.map(Gauss::conj)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |r, c| self[(c, r)].conj())
    }

    pub fn scale(&self, s: &Gauss) -> Matrix {
        self.map(|x| x * s)
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(Gauss::is_real)
    }

    pub fn is_hermitian(&self) -> bool {
        self.is_square() && *self == self.adjoint()
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Matrix {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| {
            self[(rows[r], cols[c])].clone()
        })
    }

    pub fn leading_block(&self, k: usize) -> Matrix {
        let idx: Vec<usize> = (0..k).collect();
        self.submatrix(&idx, &idx)
    }

    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let rows: Vec<usize> = (0..self.rows).collect();
        self.submatrix(&rows, cols)
    }

    pub fn select_rows(&self, rows: &[usize]) -> Matrix {
        let cols: Vec<usize> = (0..self.cols).collect();
        self.submatrix(rows, &cols)
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Matrix::from_fn(self.rows, self.cols + other.cols, |r, c| {
            if c < self.cols {
                self[(r, c)].clone()
            } else {
                other[(r, c - self.cols)].clone()
            }
        })
    }

    /// `[self; other]`
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column mismatch");
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn block_diagonal(blocks: &[Matrix]) -> Matrix {
        let rows = blocks.iter().map(Matrix::rows).sum();
        let cols = blocks.iter().map(Matrix::cols).sum();
        let mut m = Matrix::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            m.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self[(r0 + r, c0 + c)] = block[(r, c)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Matrix::from_fn(rows, cols, |r, c| self[(r0 + r, c0 + c)].clone())
    }

    pub fn mul_vec(&self, v: &[Gauss]) -> Vec<Gauss> {
        assert_eq!(v.len(), self.cols, "mul_vec shape");
        (0..self.rows)
            .map(|r| {
                let mut acc = Gauss::zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn pow(&self, k: u32) -> Matrix {
        assert!(self.is_square());
        (0..k).fold(Matrix::identity(self.rows), |acc, _| &acc * self)
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&r| !m[(r, col)].is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m[(row, col)].inv().expect("nonzero pivot");
            for c in col..m.cols {
                let x = &m[(row, c)] * &inv;
                m[(row, c)] = x;
            }
            for r in 0..m.rows {
                if r == row || m[(r, col)].is_zero() {
                    continue;
                }
                let factor = m[(r, col)].clone();
                for c in col..m.cols {
                    if m[(row, c)].is_zero() {
                        continue;
                    }
                    let delta = &factor * &m[(row, c)];
                    m[(r, c)] -= &delta;
                }
            }
            pivots.push(col);
            row += 1;
        }
        Rref { reduced: m, pivots }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Kernel basis as columns (free-variable basis, not yet canonicalized).
    pub fn kernel_columns(&self) -> Matrix {
        let Rref { reduced, pivots } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Matrix::zeros(self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            k[(f, j)] = Gauss::one();
            for (i, &p) in pivots.iter().enumerate() {
                k[(p, j)] = -&reduced[(i, f)];
            }
        }
        k
    }

    /// Some solution `X` of `self · X = rhs`, or `None` if inconsistent.
    pub fn solve(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows, "solve shape");
        let aug = self.hstack(rhs);
        let Rref { reduced, pivots } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Matrix::zeros(self.cols, rhs.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x[(p, c)] = reduced[(i, self.cols + c)].clone();
            }
        }
        Some(x)
    }

    pub fn solve_vec(&self, rhs: &[Gauss]) -> Option<Vec<Gauss>> {
        self.solve(&Matrix::column_vector(rhs)).map(|x| x.column(0))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let Rref { reduced, pivots } = self.hstack(&Matrix::identity(n)).rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(reduced.block(0, n, n, n))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Gauss {
        assert!(self.is_square(), "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Gauss::one();
        }
        let mut m = self.clone();
        let mut sign = false;
        let mut prev = Gauss::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !m[(r, k)].is_zero()) else {
                    return Gauss::zero();
                };
                m.swap_rows(k, p);
                sign = !sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
            }
            prev = m[(k, k)].clone();
        }
        let d = m[(n - 1, n - 1)].clone();
        if sign {
            -d
        } else {
            d
        }
    }

    /// All leading principal minors `D_1..D_n`.
    pub fn leading_principal_minors(&self) -> Vec<Gauss> {
        assert!(self.is_square());
        let n = self.rows;
        let mut minors = Vec::with_capacity(n);
        // Bareiss without pivoting yields D_k on the diagonal while no minor vanishes.
        let mut m = self.clone();
        let mut prev = Gauss::one();
        for k in 0..n {
            let d = m[(k, k)].clone();
            if d.is_zero() {
                minors.extend((k + 1..=n).map(|j| self.leading_block(j).det()));
                return minors;
            }
            minors.push(d.clone());
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(i, j)] * &d - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
            }
            prev = d;
        }
        minors
    }

    /// Left inverse of a full-column-rank matrix built from pivot rows.
    pub fn left_inverse(&self) -> Option<Matrix> {
        let Rref { pivots, .. } = self.transpose().rref();
        if pivots.len() < self.cols {
            return None;
        }
        let square = self.select_rows(&pivots);
        let inv = square.inverse()?;
        let mut l = Matrix::zeros(self.cols, self.rows);
        for (j, &p) in pivots.iter().enumerate() {
            for r in 0..self.cols {
                l[(r, p)] = inv[(r, j)].clone();
            }
        }
        Some(l)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|r| self.row(r).iter().map(ToString::to_string).collect())
            .collect()
    }

    pub fn from_strings(rows: &[Vec<String>]) -> Result<Matrix, LinalgError> {
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(LinalgError::Parse("ragged matrix rows".into()));
        }
        let parsed = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| s.parse::<Gauss>())
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Matrix::from_rows(parsed))
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Gauss;
    fn index(&self, (r, c): (usize, usize)) -> &Gauss {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Gauss {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "matrix product shape");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = &rhs[(k, c)];
                    if !b.is_zero() {
                        out[(r, c)] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Mul for Matrix {
    type Output = Matrix;
    fn mul(self, rhs: Matrix) -> Matrix {
        &self * &rhs
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix sum shape"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            (self.rows, self.cols),
            (rhs.rows, rhs.cols),
            "matrix difference shape"
        );
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        self.map(|x| -x)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_strings().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = Vec::<Vec<String>>::deserialize(d)?;
        Matrix::from_strings(&rows).map_err(serde::de::Error::custom)
    }
}

/// Matrix with a uniform `(2π)^twist` factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    pub coeffs: Matrix,
    pub twist: i32,
}

impl ExactMatrix {
    pub fn new(coeffs: Matrix, twist: i32) -> Self {
        ExactMatrix { coeffs, twist }
    }

    pub fn untwisted(coeffs: Matrix) -> Self {
        ExactMatrix::new(coeffs, 0)
    }

    pub fn entry(&self, r: usize, c: usize) -> ExactScalar {
        ExactScalar::new(self.coeffs[(r, c)].clone(), self.twist)
    }

    pub fn mul(&self, rhs: &ExactMatrix) -> ExactMatrix {
        ExactMatrix::new(&self.coeffs * &rhs.coeffs, self.twist + rhs.twist)
    }

    pub fn checked_add(&self, rhs: &ExactMatrix) -> Result<ExactMatrix, LinalgError> {
        if rhs.coeffs.is_zero() {
            return Ok(self.clone());
        }
        if self.coeffs.is_zero() {
            return Ok(rhs.clone());
        }
        if self.twist != rhs.twist {
            return Err(LinalgError::Twist(self.twist, rhs.twist));
        }
        Ok(ExactMatrix::new(&self.coeffs + &rhs.coeffs, self.twist))
    }

    /// Build from scalar entries, requiring a common twist among nonzero ones.
    pub fn from_scalars(
        rows: usize,
        cols: usize,
        entries: &[ExactScalar],
    ) -> Result<Self, LinalgError> {
        let mut twist = None;
        for e in entries.iter().filter(|e| !e.is_zero()) {
            match twist {
                None => twist = Some(e.twist),
                Some(t) if t != e.twist => return Err(LinalgError::Twist(t, e.twist)),
                _ => {}
            }
        }
        let coeffs = Matrix::from_fn(rows, cols, |r, c| entries[r * cols + c].coeff.clone());
        Ok(ExactMatrix::new(coeffs, twist.unwrap_or(0)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cup_matrix_determinant_is_sixteen() {
        let m = Matrix::from_ints(&[[0, 2, 2], [2, 0, 2], [2, 2, 0]]);
        assert_eq!(m.det(), Gauss::int(16));
        assert_eq!(m.kernel_columns().cols(), 0);
    }

    #[test]
    fn identity_kernel_empty_zero_kernel_full() {
        assert_eq!(Matrix::identity(3).kernel_columns().cols(), 0);
        assert_eq!(Matrix::zeros(2, 3).kernel_columns().cols(), 3);
    }

    #[test]
    fn inverse_and_solve() {
        let m = Matrix::from_rows(vec![
            vec![Gauss::complex(1, 1), Gauss::int(2)],
            vec![Gauss::int(0), Gauss::complex(0, -1)],
        ]);
        let inv = m.inverse().unwrap();
        assert_eq!(&m * &inv, Matrix::identity(2));
        let b = vec![Gauss::int(1), Gauss::int(1)];
        let x = m.solve_vec(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
    }

    #[test]
    fn singular_system_reports_none() {
        let m = Matrix::from_ints(&[[1, 1], [1, 1]]);
        assert!(m.inverse().is_none());
        assert!(m.solve_vec(&[Gauss::int(1), Gauss::int(2)]).is_none());
        assert_eq!(m.det(), Gauss::zero());
    }

    #[test]
    fn minors_survive_vanishing_leading_entry() {
        let m = Matrix::from_ints(&[[0, 1], [1, 0]]);
        assert_eq!(
            m.leading_principal_minors(),
            vec![Gauss::zero(), Gauss::int(-1)]
        );
        let g = Matrix::from_ints(&[[2, 1], [1, 2]]);
        assert_eq!(
            g.leading_principal_minors(),
            vec![Gauss::int(2), Gauss::int(3)]
        );
    }

    #[test]
    fn left_inverse_of_tall_matrix() {
        let b = Matrix::from_ints(&[[1, 0], [1, 1], [0, 2]]);
        let l = b.left_inverse().unwrap();
        assert_eq!(&l * &b, Matrix::identity(2));
    }

    #[test]
    fn string_serialization_round_trip() {
        let m = Matrix::from_rows(vec![vec![Gauss::ratio(1, 2), Gauss::complex(0, -3)]]);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"[["1/2","-3*i"]]"#);
        assert_eq!(serde_json::from_str::<Matrix>(&json).unwrap(), m);
    }
}
