//! Block elimination `A − C D⁻¹ B` when `D = 2y(Q + o(1))`.

use rand::Rng;

use super::{AsymptoticError, AsymptoticHermitian, AsymptoticMatrix, AsymptoticScalar, Poly};
use crate::exactlinalg::{Gauss, Matrix};
use crate::sample::{self, SampleRng};

/// `Q` with `D = 2yQ + O(1)`.
fn leading_block(d: &AsymptoticMatrix) -> Result<Matrix, AsymptoticError> {
    if d.depends_on_x() {
        return Err(AsymptoticError::Consistency("the D block".into()));
    }
    if let Some(s) = d
        .entries()
        .find(|s| s.poly.y_degree().is_some_and(|k| k > 1))
    {
        return Err(AsymptoticError::Growth(format!(
            "D entry {s} grows faster than y"
        )));
    }
    let half = Gauss::ratio(1, 2);
    let q = Matrix::from_fn(d.rows(), d.cols(), |r, c| {
        &d.get(r, c).poly.coeff(0, 1) * &half
    });
    if q.rows() != q.cols() || q.det().is_zero() {
        return Err(AsymptoticError::SingularLeadingBlock);
    }
    Ok(q)
}

fn check_bounded(m: &AsymptoticMatrix, name: &str) -> Result<(), AsymptoticError> {
    match m
        .entries()
        .find(|s| s.poly.depends_on_x() || s.poly.y_degree().is_some_and(|k| k > 0))
    {
        Some(s) => Err(AsymptoticError::Growth(format!(
            "{name} entry {s} is unbounded"
        ))),
        None => Ok(()),
    }
}

/// The `y → ∞` limit of `A − C D⁻¹ B`.
///
/// `D⁻¹ = (2y)⁻¹(Q⁻¹ + o(1))` and `B`, `C` are bounded, so the correction
/// only contributes decaying terms, recorded as tails on `A`.
pub fn schur_reduce(
    a: &AsymptoticMatrix,
    b: &AsymptoticMatrix,
    c: &AsymptoticMatrix,
    d: &AsymptoticMatrix,
) -> Result<AsymptoticHermitian, AsymptoticError> {
    if a.rows() != a.cols()
        || d.rows() != d.cols()
        || b.rows() != a.rows()
        || b.cols() != d.cols()
        || c.rows() != d.rows()
        || c.cols() != a.cols()
    {
        return Err(AsymptoticError::Shape(
            "blocks do not tile a square matrix".into(),
        ));
    }
    leading_block(d)?;
    check_bounded(b, "B")?;
    check_bounded(c, "C")?;
    let coupled = b.entries().chain(c.entries()).any(|s| !s.is_zero());
    let reduced = AsymptoticMatrix::from_fn(a.rows(), a.cols(), |r, col| {
        let s = a.get(r, col).clone();
        if coupled {
            s.with_tail()
        } else {
            s
        }
    });
    AsymptoticHermitian::new(reduced)
}

/// `A − C D⁻¹ B ≻ 0` and `D ≻ 0` eventually, which is positivity of the whole matrix.
pub fn schur_verdict(
    a: &AsymptoticMatrix,
    b: &AsymptoticMatrix,
    c: &AsymptoticMatrix,
    d: &AsymptoticMatrix,
) -> Result<bool, AsymptoticError> {
    let reduced = schur_reduce(a, b, c, d)?;
    let d = AsymptoticHermitian::new(d.clone())?;
    match d.eventually_positive_definite()? {
        false => Ok(false),
        true => reduced.eventually_positive_definite(),
    }
}

/// Blocks `[[A, B], [C, D]]` with `A` constant plus tails, `B = C*` bounded and
/// `D = 2yQ + P + tails`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PaperShaped {
    pub a: AsymptoticMatrix,
    pub b: AsymptoticMatrix,
    pub c: AsymptoticMatrix,
    pub d: AsymptoticMatrix,
}

impl PaperShaped {
    pub fn assemble(&self) -> AsymptoticHermitian {
        let m =
            AsymptoticMatrix::from_blocks(&self.a, &self.b, &self.c, &self.d).expect("blocks tile");
        AsymptoticHermitian::new(m).expect("hermitian by construction")
    }

    pub fn schur_verdict(&self) -> Result<bool, AsymptoticError> {
        schur_verdict(&self.a, &self.b, &self.c, &self.d)
    }
}

/// Hermitian with a tail on every entry or on none.
fn tailed(m: &Matrix, tail: bool) -> AsymptoticMatrix {
    AsymptoticMatrix::from_fn(m.rows(), m.cols(), |r, c| {
        AsymptoticScalar::new(m[(r, c)].clone().into(), tail)
    })
}

/// Random hermitian matrix, positive definite about half the time.
fn sometimes_positive(rng: &mut SampleRng, n: usize, real: bool) -> Matrix {
    let raw = if real {
        sample::real_matrix(rng, n, n, 2)
    } else {
        sample::matrix(rng, n, n, 2)
    };
    if rng.gen_bool(0.5) {
        &(&raw.adjoint() * &raw) + &Matrix::identity(n)
    } else {
        &raw + &raw.adjoint()
    }
}

/// A random matrix of the shape met in the polarization argument: `h` rows of
/// bounded entries and `m` rows growing like `2y`.
pub fn paper_shaped(rng: &mut SampleRng, h: usize, m: usize) -> PaperShaped {
    let a_tail = rng.gen_bool(0.5);
    let a = tailed(&sometimes_positive(rng, h, false), a_tail);
    let coupling = sample::matrix(rng, h, m, 2);
    let b_tail = rng.gen_bool(0.5);
    let b = tailed(&coupling, b_tail);
    let c = tailed(&coupling.adjoint(), b_tail);
    let q = sometimes_positive(rng, m, true);
    let p = sample::hermitian(rng, m, 2);
    let d_tail = rng.gen_bool(0.5);
    let d = AsymptoticMatrix::from_fn(m, m, |r, col| {
        let poly = &Poly::monomial(&q[(r, col)] * &Gauss::int(2), 0, 1)
            + &Poly::constant(p[(r, col)].clone());
        AsymptoticScalar::new(poly, d_tail)
    });
    PaperShaped { a, b, c, d }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uncoupled_blocks_reduce_to_a() {
        let a = AsymptoticMatrix::constant(&Matrix::identity(2));
        let zero = AsymptoticMatrix::zeros(2, 1);
        let d = AsymptoticMatrix::from_fn(1, 1, |_, _| Poly::monomial(Gauss::int(2), 0, 1).into());
        let reduced = schur_reduce(&a, &zero, &zero.adjoint(), &d).unwrap();
        assert_eq!(reduced.matrix(), &a);
    }

    #[test]
    fn singular_leading_block_is_rejected() {
        let a = AsymptoticMatrix::constant(&Matrix::identity(1));
        let b = AsymptoticMatrix::constant(&Matrix::identity(1));
        let d = AsymptoticMatrix::constant(&Matrix::identity(1));
        assert_eq!(
            schur_reduce(&a, &b, &b, &d),
            Err(AsymptoticError::SingularLeadingBlock)
        );
    }
}
