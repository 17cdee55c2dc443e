//! Cup products on `H*((P¹)³)` from the truncated ring `ℤ[h₁,h₂,h₃]/(h₁²,h₂²,h₃²)`.

use lmhs::exactlinalg::{Gauss, Matrix};

/// Monomial `h₁^e₁ h₂^e₂ h₃^e₃` with coefficient.
type Term = ([u8; 3], i64);

fn multiply(a: &[Term], b: &[Term]) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]];
            if e.iter().any(|&k| k > 1) {
                continue;
            }
            match out.iter_mut().find(|(x, _)| *x == e) {
                Some((_, c)) => *c += ca * cb,
                None => out.push((e, ca * cb)),
            }
        }
    }
    out
}

/// Degree-6 evaluation: the coefficient of `h₁h₂h₃`.
fn integrate(a: &[Term]) -> i64 {
    a.iter()
        .filter(|(e, _)| *e == [1, 1, 1])
        .map(|(_, c)| c)
        .sum()
}

fn divisor(coeffs: [i64; 3]) -> Vec<Term> {
    (0..3)
        .map(|i| {
            let mut e = [0; 3];
            e[i] = 1;
            (e, coeffs[i])
        })
        .collect()
}

/// `∫ h_i ∪ h_j ∪ D` for `D = Σ d_k h_k`.
pub fn triple_intersection(d: [i64; 3]) -> Matrix {
    let class = divisor(d);
    Matrix::from_fn(3, 3, |i, j| {
        let mut hi = [0; 3];
        hi[i] = 1;
        let mut hj = [0; 3];
        hj[j] = 1;
        Gauss::int(integrate(&multiply(
            &multiply(&divisor(hi), &divisor(hj)),
            &class,
        )))
    })
}

/// Restriction of the ambient form to a surface in `|2h₁ + 2h₂ + 2h₃|`.
pub fn k3_222_gram() -> Matrix {
    triple_intersection([2, 2, 2])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_divisor() {
        assert_eq!(
            triple_intersection([0, 0, 1]),
            Matrix::from_ints(&[[0, 1, 0], [1, 0, 0], [0, 0, 0]])
        );
    }
}
