use std::fmt;
use std::iter::{Product, Sum};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::LinalgError;

/// Gaussian rational `re + im*i` with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Gauss {
    pub re: BigRational,
    pub im: BigRational,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Gauss {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Gauss { re, im }
    }

    pub fn zero() -> Self {
        Gauss::default()
    }

    pub fn one() -> Self {
        Gauss::int(1)
    }

    pub fn i() -> Self {
        Gauss::new(BigRational::zero(), BigRational::one())
    }

    pub fn int(n: i64) -> Self {
        Gauss::new(BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Gauss::new(rat(n, d), BigRational::zero())
    }

    pub fn complex(re: i64, im: i64) -> Self {
        Gauss::new(
            BigRational::from_integer(re.into()),
            BigRational::from_integer(im.into()),
        )
    }

    pub fn real(re: BigRational) -> Self {
        Gauss::new(re, BigRational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Gauss {
        Gauss::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|^2`
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Gauss> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Gauss::new(&self.re / &n, -&self.im / &n))
    }

    /// Sign of a real value; `None` when the imaginary part is nonzero.
    pub fn real_sign(&self) -> Option<i8> {
        if !self.is_real() {
            return None;
        }
        Some(if self.re.is_positive() {
            1
        } else if self.re.is_negative() {
            -1
        } else {
            0
        })
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Gauss {
        match k.rem_euclid(4) {
            0 => Gauss::int(1),
            1 => Gauss::i(),
            2 => Gauss::int(-1),
            _ => -Gauss::i(),
        }
    }

    pub fn pow(&self, k: u32) -> Gauss {
        let mut acc = Gauss::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Gauss {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", fmt_rat(&self.re)),
            (true, false) => write!(f, "{}*i", fmt_rat(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "" } else { "+" };
                write!(f, "{}{}{}*i", fmt_rat(&self.re), sign, fmt_rat(&self.im))
            }
        }
    }
}

fn parse_rat(s: &str) -> Result<BigRational, LinalgError> {
    let bad = || LinalgError::Parse(format!("bad rational '{s}'"));
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for Gauss {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(LinalgError::Parse("empty scalar".into()));
        }
        let Some(body) = s.strip_suffix("*i").or_else(|| {
            s.strip_suffix('i')
                .filter(|b| b.is_empty() || b.ends_with(['+', '-']))
        }) else {
            return Ok(Gauss::real(parse_rat(&s)?));
        };
        // split real and imaginary parts at the last sign that is not leading
        let split = body
            .char_indices()
            .filter(|&(k, c)| k > 0 && (c == '+' || c == '-'))
            .map(|(k, _)| k)
            .next_back();
        let (re, im) = match split {
            Some(k) => (&body[..k], &body[k..]),
            None => ("0", body),
        };
        let im = match im {
            "" | "+" => "1",
            "-" => "-1",
            other => other,
        };
        Ok(Gauss::new(parse_rat(re)?, parse_rat(im)?))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a> $tr<&'a Gauss> for &'a Gauss {
            type Output = Gauss;
            fn $method(self, rhs: &'a Gauss) -> Gauss {
                let f: fn(&Gauss, &Gauss) -> Gauss = $body;
                f(self, rhs)
            }
        }
        impl $tr<Gauss> for Gauss {
            type Output = Gauss;
            fn $method(self, rhs: Gauss) -> Gauss {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Gauss> for Gauss {
            type Output = Gauss;
            fn $method(self, rhs: &'a Gauss) -> Gauss {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Gauss> for &'a Gauss {
            type Output = Gauss;
            fn $method(self, rhs: Gauss) -> Gauss {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| Gauss::new(&a.re + &b.re, &a.im + &b.im));
forward_binop!(Sub, sub, |a, b| Gauss::new(&a.re - &b.re, &a.im - &b.im));
forward_binop!(Mul, mul, |a, b| {
    if a.im.is_zero() && b.im.is_zero() {
        return Gauss::real(&a.re * &b.re);
    }
    Gauss::new(&a.re * &b.re - &a.im * &b.im, &a.re * &b.im + &a.im * &b.re)
});
forward_binop!(Div, div, |a, b| a * &b
    .inv()
    .expect("division by zero Gaussian rational"));

impl Neg for Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss::new(-self.re, -self.im)
    }
}

impl Neg for &Gauss {
    type Output = Gauss;
    fn neg(self) -> Gauss {
        Gauss::new(-&self.re, -&self.im)
    }
}

impl AddAssign<&Gauss> for Gauss {
    fn add_assign(&mut self, rhs: &Gauss) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl AddAssign for Gauss {
    fn add_assign(&mut self, rhs: Gauss) {
        *self += &rhs;
    }
}

impl SubAssign<&Gauss> for Gauss {
    fn sub_assign(&mut self, rhs: &Gauss) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl SubAssign for Gauss {
    fn sub_assign(&mut self, rhs: Gauss) {
        *self -= &rhs;
    }
}

impl MulAssign<&Gauss> for Gauss {
    fn mul_assign(&mut self, rhs: &Gauss) {
        *self = &*self * rhs;
    }
}

impl Sum for Gauss {
    fn sum<I: Iterator<Item = Gauss>>(iter: I) -> Gauss {
        iter.fold(Gauss::zero(), |acc, x| acc + x)
    }
}

impl<'a> Sum<&'a Gauss> for Gauss {
    fn sum<I: Iterator<Item = &'a Gauss>>(iter: I) -> Gauss {
        iter.fold(Gauss::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl Product for Gauss {
    fn product<I: Iterator<Item = Gauss>>(iter: I) -> Gauss {
        iter.fold(Gauss::one(), |acc, x| acc * x)
    }
}

impl From<i64> for Gauss {
    fn from(n: i64) -> Self {
        Gauss::int(n)
    }
}

impl From<BigRational> for Gauss {
    fn from(r: BigRational) -> Self {
        Gauss::real(r)
    }
}
