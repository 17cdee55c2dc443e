//! Polynomial-plus-exponentially-small-tail asymptotics in `z = x + i y`
//! as `y → ∞` with `x` bounded, and eventual sign and positivity decisions.

mod poly;
mod schur;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::Serialize;
use thiserror::Error;

use crate::exactlinalg::{Gauss, Matrix};

pub use poly::{det as poly_det, leading_minors as poly_leading_minors, Monomial, Poly};
pub use schur::{paper_shaped, schur_reduce, schur_verdict, PaperShaped};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AsymptoticError {
    #[error("NotDecidable: {0}")]
    NotDecidable(String),
    #[error("ConsistencyError: x survives in {0}")]
    Consistency(String),
    #[error("SingularLeadingBlock: the y-coefficient of D is singular")]
    SingularLeadingBlock,
    #[error("GrowthError: {0}")]
    Growth(String),
    #[error("NotHermitian: entry ({0},{1}) differs from the conjugate of its mirror")]
    NotHermitian(usize, usize),
    #[error("ShapeError: {0}")]
    Shape(String),
}

/// `poly + (an unspecified element of 𝐡 when tail is set)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct AsymptoticScalar {
    pub poly: Poly,
    pub tail: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EventualSign {
    Positive,
    Negative,
    Zero,
    Indeterminate,
}

impl AsymptoticScalar {
    pub fn new(poly: Poly, tail: bool) -> Self {
        AsymptoticScalar { poly, tail }
    }

    pub fn zero() -> Self {
        AsymptoticScalar::default()
    }

    pub fn constant(c: Gauss) -> Self {
        AsymptoticScalar::new(Poly::constant(c), false)
    }

    pub fn exact(poly: Poly) -> Self {
        AsymptoticScalar::new(poly, false)
    }

    pub fn pure_tail() -> Self {
        AsymptoticScalar::new(Poly::zero(), true)
    }

    /// The same polynomial part plus a tail.
    pub fn with_tail(mut self) -> Self {
        self.tail = true;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero() && !self.tail
    }

    pub fn conj(&self) -> Self {
        AsymptoticScalar::new(self.poly.conj(), self.tail)
    }

    pub fn scale(&self, c: &Gauss) -> Self {
        if c.is_zero() {
            return AsymptoticScalar::zero();
        }
        AsymptoticScalar::new(self.poly.scale(c), self.tail)
    }

    /// Sign for `y ≫ 0`, uniformly in bounded `x`.
    pub fn eventual_sign(&self) -> EventualSign {
        if self.poly.depends_on_x() {
            return EventualSign::Indeterminate;
        }
        match self.poly.leading_y() {
            None if self.tail => EventualSign::Indeterminate,
            None => EventualSign::Zero,
            Some((_, c)) => match c.real_sign() {
                Some(s) if s > 0 => EventualSign::Positive,
                Some(s) if s < 0 => EventualSign::Negative,
                _ => EventualSign::Indeterminate,
            },
        }
    }

    pub fn eval_poly(&self, x: &Gauss, y: &Gauss) -> Gauss {
        self.poly.eval(x, y)
    }
}

pub fn eventual_sign(s: &AsymptoticScalar) -> EventualSign {
    s.eventual_sign()
}

impl From<Poly> for AsymptoticScalar {
    fn from(p: Poly) -> Self {
        AsymptoticScalar::exact(p)
    }
}

impl From<Gauss> for AsymptoticScalar {
    fn from(c: Gauss) -> Self {
        AsymptoticScalar::constant(c)
    }
}

impl<'a> Add<&'a AsymptoticScalar> for &'a AsymptoticScalar {
    type Output = AsymptoticScalar;
    fn add(self, rhs: &'a AsymptoticScalar) -> AsymptoticScalar {
        AsymptoticScalar::new(&self.poly + &rhs.poly, self.tail || rhs.tail)
    }
}

impl<'a> Sub<&'a AsymptoticScalar> for &'a AsymptoticScalar {
    type Output = AsymptoticScalar;
    fn sub(self, rhs: &'a AsymptoticScalar) -> AsymptoticScalar {
        AsymptoticScalar::new(&self.poly - &rhs.poly, self.tail || rhs.tail)
    }
}

/// `(p + h)(q + k) = pq + (pk + qh + hk)`, the bracket lying in 𝐡 unless it vanishes.
impl<'a> Mul<&'a AsymptoticScalar> for &'a AsymptoticScalar {
    type Output = AsymptoticScalar;
    fn mul(self, rhs: &'a AsymptoticScalar) -> AsymptoticScalar {
        let tail =
            (self.tail && (rhs.tail || !rhs.poly.is_zero())) || (rhs.tail && !self.poly.is_zero());
        AsymptoticScalar::new(&self.poly * &rhs.poly, tail)
    }
}

impl Neg for &AsymptoticScalar {
    type Output = AsymptoticScalar;
    fn neg(self) -> AsymptoticScalar {
        AsymptoticScalar::new(-&self.poly, self.tail)
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for AsymptoticScalar {
            type Output = AsymptoticScalar;
            fn $method(self, rhs: AsymptoticScalar) -> AsymptoticScalar {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for AsymptoticScalar {
    type Output = AsymptoticScalar;
    fn neg(self) -> AsymptoticScalar {
        -&self
    }
}

impl std::iter::Sum for AsymptoticScalar {
    fn sum<I: Iterator<Item = AsymptoticScalar>>(iter: I) -> Self {
        iter.fold(AsymptoticScalar::zero(), |acc, s| &acc + &s)
    }
}

impl fmt::Display for AsymptoticScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.poly.is_zero(), self.tail) {
            (true, true) => write!(f, "h"),
            (_, true) => write!(f, "{} + h", self.poly),
            (_, false) => write!(f, "{}", self.poly),
        }
    }
}

/// Rectangular matrix of asymptotic scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticMatrix {
    rows: usize,
    cols: usize,
    data: Vec<AsymptoticScalar>,
}

impl AsymptoticMatrix {
    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> AsymptoticScalar,
    ) -> Self {
        let data = (0..rows * cols).map(|k| f(k / cols, k % cols)).collect();
        AsymptoticMatrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        AsymptoticMatrix::from_fn(rows, cols, |_, _| AsymptoticScalar::zero())
    }

    pub fn from_rows(rows: Vec<Vec<AsymptoticScalar>>) -> Result<Self, AsymptoticError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(AsymptoticError::Shape("ragged rows".into()));
        }
        let n = rows.len();
        Ok(AsymptoticMatrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn constant(m: &Matrix) -> Self {
        AsymptoticMatrix::from_fn(m.rows(), m.cols(), |r, c| {
            AsymptoticScalar::constant(m[(r, c)].clone())
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &AsymptoticScalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, s: AsymptoticScalar) {
        self.data[r * self.cols + c] = s;
    }

    pub fn entries(&self) -> impl Iterator<Item = &AsymptoticScalar> {
        self.data.iter()
    }

    pub fn adjoint(&self) -> Self {
        AsymptoticMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).conj())
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        AsymptoticMatrix::from_fn(rows, cols, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        AsymptoticMatrix::from_fn(rows.len(), cols.len(), |r, c| {
            self.get(rows[r], cols[c]).clone()
        })
    }

    /// `[[a, b], [c, d]]`
    pub fn from_blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self, AsymptoticError> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(AsymptoticError::Shape("blocks do not tile".into()));
        }
        let (top, left) = (a.rows, a.cols);
        Ok(AsymptoticMatrix::from_fn(
            top + c.rows,
            left + b.cols,
            |r, col| match (r < top, col < left) {
                (true, true) => a.get(r, col).clone(),
                (true, false) => b.get(r, col - left).clone(),
                (false, true) => c.get(r - top, col).clone(),
                (false, false) => d.get(r - top, col - left).clone(),
            },
        ))
    }

    pub fn any_tail(&self) -> bool {
        self.data.iter().any(|s| s.tail)
    }

    pub fn depends_on_x(&self) -> bool {
        self.data.iter().any(|s| s.poly.depends_on_x())
    }

    fn poly_rows(&self) -> Vec<Vec<Poly>> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| self.get(r, c).poly.clone())
                    .collect()
            })
            .collect()
    }

    /// Determinant; the tail flag is set whenever any entry carries a tail.
    pub fn det(&self) -> Result<AsymptoticScalar, AsymptoticError> {
        if self.rows != self.cols {
            return Err(AsymptoticError::Shape(format!(
                "{}×{} is not square",
                self.rows, self.cols
            )));
        }
        Ok(AsymptoticScalar::new(
            poly::det(&self.poly_rows()),
            self.any_tail(),
        ))
    }

    pub fn eval_poly(&self, x: &Gauss, y: &Gauss) -> Matrix {
        Matrix::from_fn(self.rows, self.cols, |r, c| self.get(r, c).eval_poly(x, y))
    }
}

impl<'a> Mul<&'a AsymptoticMatrix> for &'a AsymptoticMatrix {
    type Output = AsymptoticMatrix;
    fn mul(self, rhs: &'a AsymptoticMatrix) -> AsymptoticMatrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in product");
        AsymptoticMatrix::from_fn(self.rows, rhs.cols, |r, c| {
            (0..self.cols).map(|k| self.get(r, k) * rhs.get(k, c)).sum()
        })
    }
}

impl fmt::Display for AsymptoticMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Square asymptotic matrix equal to its conjugate transpose at the polynomial level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AsymptoticHermitian(AsymptoticMatrix);

impl AsymptoticHermitian {
    pub fn new(m: AsymptoticMatrix) -> Result<Self, AsymptoticError> {
        if m.rows != m.cols {
            return Err(AsymptoticError::Shape(format!(
                "{}×{} is not square",
                m.rows, m.cols
            )));
        }
        for r in 0..m.rows {
            for c in r..m.cols {
                let (a, b) = (m.get(r, c), m.get(c, r));
                if a.poly != b.poly.conj() || a.tail != b.tail {
                    return Err(AsymptoticError::NotHermitian(r, c));
                }
            }
        }
        Ok(AsymptoticHermitian(m))
    }

    pub fn constant(m: &Matrix) -> Result<Self, AsymptoticError> {
        AsymptoticHermitian::new(AsymptoticMatrix::constant(m))
    }

    pub fn matrix(&self) -> &AsymptoticMatrix {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.rows
    }

    pub fn get(&self, r: usize, c: usize) -> &AsymptoticScalar {
        self.0.get(r, c)
    }

    /// Leading principal minors; minor `k` carries a tail if any entry of its block does.
    pub fn leading_principal_minors(&self) -> Vec<AsymptoticScalar> {
        let polys = poly::leading_minors(&self.0.poly_rows());
        let mut tail = false;
        polys
            .into_iter()
            .enumerate()
            .map(|(k, p)| {
                tail |= (0..=k).any(|j| self.get(k, j).tail || self.get(j, k).tail);
                AsymptoticScalar::new(p, tail)
            })
            .collect()
    }

    fn decided_minors(&self) -> Result<Vec<(usize, EventualSign)>, AsymptoticError> {
        let minors = self.leading_principal_minors();
        if let Some(k) = minors.iter().position(|m| m.poly.depends_on_x()) {
            return Err(AsymptoticError::Consistency(format!(
                "leading minor {}",
                k + 1
            )));
        }
        Ok(minors
            .iter()
            .enumerate()
            .map(|(k, m)| (k + 1, m.eventual_sign()))
            .collect())
    }

    /// Positive definite for all `y ≫ 0`, decided by leading principal minors.
    pub fn eventually_positive_definite(&self) -> Result<bool, AsymptoticError> {
        let signs = self.decided_minors()?;
        if signs
            .iter()
            .any(|(_, s)| matches!(s, EventualSign::Negative | EventualSign::Zero))
        {
            return Ok(false);
        }
        match signs
            .iter()
            .find(|(_, s)| *s == EventualSign::Indeterminate)
        {
            Some((k, _)) => Err(AsymptoticError::NotDecidable(format!(
                "sign of leading minor {k}"
            ))),
            None => Ok(true),
        }
    }

    /// Number of negative directions for `y ≫ 0`: sign changes along `1, Δ₁, …, Δ_n`,
    /// which needs every leading minor eventually nonzero.
    pub fn eventual_negative_index(&self) -> Result<usize, AsymptoticError> {
        let mut prev = EventualSign::Positive;
        let mut changes = 0;
        for (k, s) in self.decided_minors()? {
            match s {
                EventualSign::Indeterminate => {
                    return Err(AsymptoticError::NotDecidable(format!(
                        "sign of leading minor {k}"
                    )))
                }
                EventualSign::Zero => {
                    return Err(AsymptoticError::NotDecidable(format!(
                        "leading minor {k} vanishes"
                    )))
                }
                s => {
                    changes += (s != prev) as usize;
                    prev = s;
                }
            }
        }
        Ok(changes)
    }

    pub fn eval_poly(&self, x: &Gauss, y: &Gauss) -> Matrix {
        self.0.eval_poly(x, y)
    }
}

pub fn eventually_positive_definite(m: &AsymptoticHermitian) -> Result<bool, AsymptoticError> {
    m.eventually_positive_definite()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn y() -> AsymptoticScalar {
        Poly::y().into()
    }

    #[test]
    fn tail_absorbs() {
        let h = AsymptoticScalar::pure_tail();
        let p = &y() * &y();
        assert_eq!(&h * &p, AsymptoticScalar::pure_tail());
        assert_eq!(&h * &AsymptoticScalar::zero(), AsymptoticScalar::zero());
        assert_eq!((&p + &h).eventual_sign(), EventualSign::Positive);
        assert_eq!(h.eventual_sign(), EventualSign::Indeterminate);
    }

    #[test]
    fn x_dependence_is_indeterminate() {
        let s = AsymptoticScalar::exact(&Poly::x() * &Poly::y());
        assert_eq!(s.eventual_sign(), EventualSign::Indeterminate);
    }

    #[test]
    fn indefinite_pattern() {
        let m = AsymptoticHermitian::constant(&Matrix::diagonal(&[Gauss::one(), Gauss::int(-1)]))
            .unwrap();
        assert!(!m.eventually_positive_definite().unwrap());
        assert_eq!(m.eventual_negative_index().unwrap(), 1);
    }
}
