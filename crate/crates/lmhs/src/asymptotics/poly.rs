//! Polynomials in `x` and Laurent polynomials in `y` over ℚ(i).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::exactlinalg::Gauss;

/// Exponent pair `(x, y)`; the lexicographic order puts `x` first.
pub type Monomial = (u32, i32);

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    terms: BTreeMap<Monomial, Gauss>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn constant(c: Gauss) -> Self {
        Poly::monomial(c, 0, 0)
    }

    pub fn int(n: i64) -> Self {
        Poly::constant(Gauss::int(n))
    }

    pub fn monomial(c: Gauss, x: u32, y: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((x, y), c);
        }
        Poly { terms }
    }

    pub fn x() -> Self {
        Poly::monomial(Gauss::one(), 1, 0)
    }

    pub fn y() -> Self {
        Poly::monomial(Gauss::one(), 0, 1)
    }

    /// `z = x + i y`
    pub fn z() -> Self {
        &Poly::x() + &Poly::monomial(Gauss::i(), 0, 1)
    }

    pub fn zbar() -> Self {
        Poly::z().conj()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Gauss)> {
        self.terms.iter()
    }

    pub fn coeff(&self, x: u32, y: i32) -> Gauss {
        self.terms.get(&(x, y)).cloned().unwrap_or_else(Gauss::zero)
    }

    pub fn depends_on_x(&self) -> bool {
        self.terms.keys().any(|&(x, _)| x > 0)
    }

    /// The constant coefficient, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Gauss> {
        match self.terms.len() {
            0 => Some(Gauss::zero()),
            1 => self.terms.get(&(0, 0)).cloned(),
            _ => None,
        }
    }

    /// Largest `y` exponent of an `x`-free polynomial.
    pub fn y_degree(&self) -> Option<i32> {
        if self.depends_on_x() {
            return None;
        }
        self.terms.keys().map(|&(_, y)| y).max()
    }

    /// Leading `(exponent, coefficient)` in `y` of an `x`-free polynomial.
    pub fn leading_y(&self) -> Option<(i32, Gauss)> {
        if self.depends_on_x() {
            return None;
        }
        self.terms
            .iter()
            .next_back()
            .map(|(&(_, y), c)| (y, c.clone()))
    }

    /// Coefficient of `y^k` as a polynomial in `x`.
    pub fn y_coeff(&self, k: i32) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|(&(_, y), _)| y == k)
            .map(|(&(x, _), c)| ((x, 0), c.clone()))
            .collect();
        Poly { terms }
    }

    /// Coefficients conjugated; `x` and `y` are real.
    pub fn conj(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(&m, c)| (m, c.conj())).collect(),
        }
    }

    pub fn scale(&self, s: &Gauss) -> Poly {
        if s.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(&m, c)| (m, c * s)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Poly {
        (0..k).fold(Poly::int(1), |acc, _| &acc * self)
    }

    /// Derivative in `y`.
    pub fn dy(&self) -> Poly {
        let mut out = Poly::zero();
        for (&(x, y), c) in &self.terms {
            out.add_term((x, y - 1), c * &Gauss::int(y as i64));
        }
        out
    }

    pub fn eval(&self, x: &Gauss, y: &Gauss) -> Gauss {
        self.terms
            .iter()
            .map(|(&(ex, ey), c)| {
                let yy = if ey >= 0 {
                    y.pow(ey as u32)
                } else {
                    y.inv().expect("y ≠ 0").pow(ey.unsigned_abs())
                };
                c * &x.pow(ex) * yy
            })
            .sum()
    }

    fn add_term(&mut self, m: Monomial, c: Gauss) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(Gauss::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn leading(&self) -> Option<(Monomial, &Gauss)> {
        self.terms.iter().next_back().map(|(&m, c)| (m, c))
    }

    fn min_y(&self) -> i32 {
        self.terms.keys().map(|&(_, y)| y).min().unwrap_or(0)
    }

    fn max_y(&self) -> i32 {
        self.terms.keys().map(|&(_, y)| y).max().unwrap_or(0)
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        let (dlead, dc) = d.leading()?;
        let dinv = dc.inv()?;
        if self.is_zero() {
            return Some(Poly::zero());
        }
        // extreme y-degrees of a product add, which bounds the quotient's y-range
        let lo = self.min_y() - d.min_y();
        let hi = self.max_y() - d.max_y();
        let mut rem = self.clone();
        let mut quot = Poly::zero();
        while let Some((m, c)) = rem.leading() {
            let q = (m.0.checked_sub(dlead.0)?, m.1 - dlead.1);
            if q.1 < lo || q.1 > hi {
                return None;
            }
            let t = Poly::monomial(c * &dinv, q.0, q.1);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }
}

impl From<Gauss> for Poly {
    fn from(c: Gauss) -> Self {
        Poly::constant(c)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        for (&m, c) in &rhs.terms {
            out.add_term(m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        let mut out = self.clone();
        for (&m, c) in &rhs.terms {
            out.add_term(m, -c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        let mut out = Poly::zero();
        for (&(ax, ay), a) in &self.terms {
            for (&(bx, by), b) in &rhs.terms {
                out.add_term((ax + bx, ay + by), a * b);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(&m, c)| (m, -c)).collect(),
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $method:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

fn monomial_text(x: u32, y: i32) -> String {
    let var = |name: &str, e: i64| match e {
        0 => None,
        1 => Some(name.to_string()),
        e => Some(format!("{name}^{e}")),
    };
    [var("x", x as i64), var("y", y as i64)]
        .into_iter()
        .flatten()
        .collect::<Vec<_>>()
        .join("*")
}

/// Highest power of `y` first, e.g. `2*y^2 - x + 3`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(&(x, y), _)| std::cmp::Reverse((y, x)));
        for (k, (&(x, y), c)) in terms.into_iter().enumerate() {
            let mono = monomial_text(x, y);
            let (neg, mag) = match c.real_sign() {
                Some(s) if s < 0 => (true, -c),
                _ => (false, c.clone()),
            };
            let coeff = if mag.is_real() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            let body = match (mono.is_empty(), mag.is_one()) {
                (true, _) => coeff,
                (false, true) => mono,
                (false, false) => format!("{coeff}*{mono}"),
            };
            match (k, neg) {
                (0, true) => write!(f, "-{body}")?,
                (0, false) => write!(f, "{body}")?,
                (_, true) => write!(f, " - {body}")?,
                (_, false) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

/// Determinant over the polynomial ring by fraction-free elimination with row pivoting.
pub fn det(m: &[Vec<Poly>]) -> Poly {
    let n = m.len();
    if n == 0 {
        return Poly::int(1);
    }
    let mut a: Vec<Vec<Poly>> = m.to_vec();
    let mut prev = Poly::int(1);
    let mut negate = false;
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Poly::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .exact_div(&prev)
                    .expect("fraction-free elimination divides exactly");
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Every leading principal minor, in order.
pub fn leading_minors(m: &[Vec<Poly>]) -> Vec<Poly> {
    let n = m.len();
    let mut a: Vec<Vec<Poly>> = m.to_vec();
    let mut out = Vec::with_capacity(n);
    let mut prev = Poly::int(1);
    for k in 0..n {
        if a[k][k].is_zero() {
            // the chain breaks; finish minor by minor
            out.extend((k + 1..=n).map(|s| det(&leading_block(m, s))));
            return out;
        }
        out.push(a[k][k].clone());
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num
                    .exact_div(&prev)
                    .expect("fraction-free elimination divides exactly");
            }
        }
        prev = a[k][k].clone();
    }
    out
}

fn leading_block(m: &[Vec<Poly>], s: usize) -> Vec<Vec<Poly>> {
    m[..s].iter().map(|row| row[..s].to_vec()).collect()
}
