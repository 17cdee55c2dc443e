use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use super::{Gauss, LinalgError};

/// `coeff * (2π)^twist` with a Gaussian rational coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ExactScalar {
    pub coeff: Gauss,
    pub twist: i32,
}

impl ExactScalar {
    pub fn new(coeff: Gauss, twist: i32) -> Self {
        ExactScalar { coeff, twist }
    }

    pub fn untwisted(coeff: Gauss) -> Self {
        ExactScalar::new(coeff, 0)
    }

    pub fn zero() -> Self {
        ExactScalar::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// `(2πi)^k` as a scalar: `i^k (2π)^k`.
    pub fn two_pi_i_pow(k: i32) -> Self {
        ExactScalar::new(Gauss::i_pow(k as i64), k)
    }

    /// Addition; twists must agree unless one summand is zero.
    pub fn checked_add(&self, rhs: &ExactScalar) -> Result<ExactScalar, LinalgError> {
        if rhs.is_zero() {
            return Ok(self.clone());
        }
        if self.is_zero() {
            return Ok(rhs.clone());
        }
        if self.twist != rhs.twist {
            return Err(LinalgError::Twist(self.twist, rhs.twist));
        }
        Ok(ExactScalar::new(&self.coeff + &rhs.coeff, self.twist))
    }

    pub fn checked_sub(&self, rhs: &ExactScalar) -> Result<ExactScalar, LinalgError> {
        self.checked_add(&-rhs)
    }

    pub fn conj(&self) -> ExactScalar {
        ExactScalar::new(self.coeff.conj(), self.twist)
    }

    /// Defined only for real coefficients; `2π > 0` leaves the sign alone.
    pub fn sign(&self) -> Option<i8> {
        self.coeff.real_sign()
    }
}

impl Mul for &ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: &ExactScalar) -> ExactScalar {
        ExactScalar::new(&self.coeff * &rhs.coeff, self.twist + rhs.twist)
    }
}

impl Mul for ExactScalar {
    type Output = ExactScalar;
    fn mul(self, rhs: ExactScalar) -> ExactScalar {
        &self * &rhs
    }
}

impl Neg for &ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        ExactScalar::new(-&self.coeff, self.twist)
    }
}

impl Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        -&self
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twist == 0 || self.is_zero() {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "{}*twist^{}", self.coeff, self.twist)
        }
    }
}

impl FromStr for ExactScalar {
    type Err = LinalgError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once("*twist^") {
            Some((c, k)) => {
                let twist = k
                    .trim()
                    .parse()
                    .map_err(|_| LinalgError::Parse(format!("bad twist in '{s}'")))?;
                Ok(ExactScalar::new(c.parse()?, twist))
            }
            None => Ok(ExactScalar::untwisted(s.parse()?)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mismatched_twists_do_not_add() {
        let a = ExactScalar::new(Gauss::int(1), 1);
        let b = ExactScalar::new(Gauss::int(1), 2);
        assert_eq!(a.checked_add(&b), Err(LinalgError::Twist(1, 2)));
        assert_eq!(a.checked_add(&ExactScalar::zero()).unwrap(), a);
    }

    #[test]
    fn conj_keeps_twist_and_is_involutive() {
        let a = ExactScalar::new(Gauss::complex(2, 3), -2);
        assert_eq!(a.conj().twist, -2);
        assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn sign_needs_real_coefficient() {
        assert_eq!(ExactScalar::new(Gauss::int(-3), 5).sign(), Some(-1));
        assert_eq!(ExactScalar::new(Gauss::i(), 0).sign(), None);
    }

    #[test]
    fn two_pi_i_cubed() {
        let s = ExactScalar::two_pi_i_pow(3);
        assert_eq!(s.coeff, -Gauss::i());
        assert_eq!(s.twist, 3);
        assert_eq!(s.to_string(), "-1*i*twist^3");
        assert_eq!(s.to_string().parse::<ExactScalar>().unwrap(), s);
    }
}
