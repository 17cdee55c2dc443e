use num_traits::Signed;

use super::{ExactMatrix, Gauss, LinalgError, Matrix};

/// Hermitian form `(u, v) ↦ u* G v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HermitianForm {
    gram: ExactMatrix,
}

impl HermitianForm {
    pub fn new(gram: ExactMatrix) -> Result<Self, LinalgError> {
        if !gram.coeffs.is_hermitian() {
            return Err(LinalgError::NotHermitian);
        }
        Ok(HermitianForm { gram })
    }

    pub fn untwisted(gram: Matrix) -> Result<Self, LinalgError> {
        HermitianForm::new(ExactMatrix::untwisted(gram))
    }

    pub fn gram(&self) -> &ExactMatrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.gram.coeffs.rows()
    }

    pub fn eval(&self, u: &[Gauss], v: &[Gauss]) -> Gauss {
        let gv = self.gram.coeffs.mul_vec(v);
        u.iter().zip(&gv).map(|(a, b)| a.conj() * b).sum()
    }

    /// Sylvester's criterion on leading principal minors; the twist factor is positive.
    pub fn positive_definite(&self) -> Result<bool, LinalgError> {
        let minors = self.gram.coeffs.leading_principal_minors();
        for (k, m) in minors.iter().enumerate() {
            match m.real_sign() {
                None => {
                    return Err(LinalgError::NotDecidable(format!(
                        "minor {} is not real: {m}",
                        k + 1
                    )))
                }
                Some(s) if s <= 0 => return Ok(false),
                Some(_) => {}
            }
        }
        debug_assert_eq!(ldl_pivots_positive(&self.gram.coeffs), Some(true));
        Ok(true)
    }

    /// Counts of (positive, negative) eigenvalues when every leading minor is nonzero.
    pub fn signature(&self) -> Option<(usize, usize)> {
        let minors = self.gram.coeffs.leading_principal_minors();
        let mut prev = 1i8;
        let (mut pos, mut neg) = (0, 0);
        for m in &minors {
            let s = m.real_sign()?;
            if s == 0 {
                return None;
            }
            if s == prev {
                pos += 1;
            } else {
                neg += 1;
            }
            prev = s;
        }
        Some((pos, neg))
    }
}

/// LDL* without pivoting; `Some(true)` iff every pivot is real and positive.
pub fn ldl_pivots_positive(g: &Matrix) -> Option<bool> {
    let n = g.rows();
    let mut a = g.clone();
    for k in 0..n {
        let d = a[(k, k)].clone();
        if !d.is_real() {
            return None;
        }
        if !d.re.is_positive() {
            return Some(false);
        }
        let inv = d.inv()?;
        for i in k + 1..n {
            let l = &a[(i, k)] * &inv;
            for j in k + 1..n {
                let delta = &l * &a[(k, j)];
                a[(i, j)] -= &delta;
            }
        }
    }
    Some(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_and_diag() {
        assert!(HermitianForm::untwisted(Matrix::identity(3))
            .unwrap()
            .positive_definite()
            .unwrap());
        let d = Matrix::diagonal(&[Gauss::int(1), Gauss::int(-1)]);
        assert!(!HermitianForm::untwisted(d)
            .unwrap()
            .positive_definite()
            .unwrap());
    }

    #[test]
    fn two_one_one_two() {
        let g = Matrix::from_ints(&[[2, 1], [1, 2]]);
        let h = HermitianForm::untwisted(g).unwrap();
        assert!(h.positive_definite().unwrap());
        assert_eq!(h.signature(), Some((2, 0)));
    }

    #[test]
    fn non_hermitian_rejected() {
        let g = Matrix::from_ints(&[[1, 2], [0, 1]]);
        assert_eq!(HermitianForm::untwisted(g), Err(LinalgError::NotHermitian));
    }

    #[test]
    fn complex_hermitian_positive() {
        let g = Matrix::from_rows(vec![
            vec![Gauss::int(2), Gauss::i()],
            vec![-Gauss::i(), Gauss::int(2)],
        ]);
        let h = HermitianForm::untwisted(g).unwrap();
        assert!(h.positive_definite().unwrap());
        assert_eq!(
            h.eval(
                &[Gauss::one(), Gauss::zero()],
                &[Gauss::one(), Gauss::zero()]
            ),
            Gauss::int(2)
        );
    }

    #[test]
    fn signature_counts_sign_changes() {
        let g = Matrix::diagonal(&[Gauss::int(3), Gauss::int(1), Gauss::int(-2)]);
        assert_eq!(
            HermitianForm::untwisted(g).unwrap().signature(),
            Some((2, 1))
        );
    }
}
