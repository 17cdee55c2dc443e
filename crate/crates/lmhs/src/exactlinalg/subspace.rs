use super::{Gauss, LinalgError, Matrix};

/// Subspace of `ℚ(i)^ambient` with a canonical basis.
///
/// The basis columns are in reduced column-echelon form: the rows of the
/// transpose are the nonzero rows of an RREF, so equal subspaces have equal
/// bases.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Matrix,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(ambient, 0),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            basis: Matrix::identity(ambient),
        }
    }

    /// Span of the columns of `spanning`.
    pub fn span(spanning: &Matrix) -> Self {
        let ambient = spanning.rows();
        let rref = spanning.transpose().rref();
        let rank = rref.pivots.len();
        let rows: Vec<usize> = (0..rank).collect();
        let basis = if rank == 0 {
            Matrix::zeros(ambient, 0)
        } else {
            rref.reduced.select_rows(&rows).transpose()
        };
        Subspace { basis }
    }

    pub fn span_vectors(ambient: usize, vectors: &[Vec<Gauss>]) -> Self {
        Subspace::span(&Matrix::from_columns(ambient, vectors))
    }

    /// Coordinate subspace on the given indices.
    pub fn coordinate(ambient: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let cols: Vec<Vec<Gauss>> = indices
            .into_iter()
            .map(|k| {
                let mut v = vec![Gauss::zero(); ambient];
                v[k] = Gauss::one();
                v
            })
            .collect();
        Subspace::span_vectors(ambient, &cols)
    }

    pub fn kernel(m: &Matrix) -> Self {
        Subspace::span(&m.kernel_columns())
    }

    pub fn image(m: &Matrix) -> Self {
        Subspace::span(m)
    }

    pub fn ambient(&self) -> usize {
        self.basis.rows()
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn vectors(&self) -> Vec<Vec<Gauss>> {
        self.basis.columns().collect()
    }

    pub fn contains(&self, v: &[Gauss]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        other.basis.columns().all(|v| self.contains(&v))
    }

    /// Coordinates of `v` in the canonical basis.
    pub fn coordinates(&self, v: &[Gauss]) -> Option<Vec<Gauss>> {
        if v.iter().all(Gauss::is_zero) {
            return Some(vec![Gauss::zero(); self.dim()]);
        }
        if self.is_zero() {
            return None;
        }
        self.basis.solve_vec(v)
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        Subspace::span(&self.basis.hstack(&other.basis))
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Subspace::zero(self.ambient());
        }
        // a - b = 0 with a in self, b in other
        let k = self.basis.hstack(&(-&other.basis)).kernel_columns();
        let top = k.block(0, 0, self.dim(), k.cols());
        Subspace::span(&(&self.basis * &top))
    }

    /// Image under the antilinear real structure `v ↦ J·v̄`.
    pub fn conj(&self, real_structure: &Matrix) -> Subspace {
        Subspace::span(&(real_structure * &self.basis.conj()))
    }

    pub fn is_real(&self, real_structure: &Matrix) -> bool {
        self.conj(real_structure) == *self
    }

    pub fn map(&self, m: &Matrix) -> Subspace {
        Subspace::span(&(m * &self.basis))
    }

    /// Matrix whose kernel is exactly this subspace.
    pub fn annihilator(&self) -> Matrix {
        self.basis.transpose().kernel_columns().transpose()
    }

    /// `{v : m·v ∈ self}`
    pub fn preimage(&self, m: &Matrix) -> Subspace {
        let a = self.annihilator();
        if a.rows() == 0 {
            return Subspace::full(m.cols());
        }
        Subspace::kernel(&(&a * m))
    }

    /// Vectors from `candidates`, in order, that extend `self` independently.
    pub fn greedy_extension(&self, candidates: &[Vec<Gauss>]) -> Vec<Vec<Gauss>> {
        let mut current = self.clone();
        let mut picked = Vec::new();
        for v in candidates {
            if !current.contains(v) {
                current = current.sum(&Subspace::span_vectors(
                    self.ambient(),
                    std::slice::from_ref(v),
                ));
                picked.push(v.clone());
            }
        }
        picked
    }
}

/// Quotient `V/U` with representatives and a projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    /// Representatives in the ambient space, one column per quotient basis vector.
    pub reps: Matrix,
    /// `dim(V/U) × ambient`; kills `U`, sends `reps` to the identity.
    pub projection: Matrix,
}

impl Quotient {
    pub fn dim(&self) -> usize {
        self.reps.cols()
    }

    pub fn project(&self, v: &[Gauss]) -> Vec<Gauss> {
        self.projection.mul_vec(v)
    }

    pub fn lift(&self, coords: &[Gauss]) -> Vec<Gauss> {
        self.reps.mul_vec(coords)
    }

    /// `reps · projection`, idempotent on the ambient space.
    pub fn section(&self) -> Matrix {
        &self.reps * &self.projection
    }
}

pub fn quotient_map(v: &Subspace, u: &Subspace) -> Result<Quotient, LinalgError> {
    if v.ambient() != u.ambient() {
        return Err(LinalgError::Shape(format!(
            "quotient ambient {} vs {}",
            v.ambient(),
            u.ambient()
        )));
    }
    if !v.contains_space(u) {
        return Err(LinalgError::Containment);
    }
    let n = v.ambient();
    let reps = Matrix::from_columns(n, &u.greedy_extension(&v.vectors()));
    let full = u.basis().hstack(&reps);
    let projection = if reps.cols() == 0 {
        Matrix::zeros(0, n)
    } else {
        let left = full.left_inverse().expect("independent columns");
        left.block(u.dim(), 0, reps.cols(), n)
    };
    Ok(Quotient { reps, projection })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, k: usize) -> Vec<Gauss> {
        let mut v = vec![Gauss::zero(); n];
        v[k] = Gauss::one();
        v
    }

    #[test]
    fn span_is_canonical() {
        let a = Subspace::span_vectors(
            3,
            &[vec![Gauss::int(2), Gauss::int(2), Gauss::int(0)], e(3, 2)],
        );
        let b = Subspace::span_vectors(
            3,
            &[vec![Gauss::int(1), Gauss::int(1), Gauss::int(5)], e(3, 2)],
        );
        assert_eq!(a, b);
    }

    #[test]
    fn quotient_of_plane_by_zero_is_plane() {
        let v = Subspace::coordinate(3, [0, 1]);
        let q = quotient_map(&v, &Subspace::zero(3)).unwrap();
        assert_eq!(q.dim(), 2);
        assert_eq!(q.project(&e(3, 0)), vec![Gauss::one(), Gauss::zero()]);
        assert_eq!(quotient_map(&v, &v).unwrap().dim(), 0);
    }

    #[test]
    fn quotient_kills_diagonal() {
        let v = Subspace::full(3);
        let mut d = e(3, 0);
        d[1] = Gauss::one();
        let u = Subspace::span_vectors(3, &[d.clone()]);
        let q = quotient_map(&v, &u).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(q.project(&d).iter().all(Gauss::is_zero));
        let s = q.section();
        assert_eq!(&s * &s, s);
    }

    #[test]
    fn quotient_requires_containment() {
        let v = Subspace::coordinate(3, [0]);
        let u = Subspace::coordinate(3, [1]);
        assert_eq!(quotient_map(&v, &u), Err(LinalgError::Containment));
    }

    #[test]
    fn intersection_and_preimage() {
        let a = Subspace::coordinate(3, [0, 1]);
        let b = Subspace::coordinate(3, [1, 2]);
        assert_eq!(a.intersection(&b), Subspace::coordinate(3, [1]));
        let n = Matrix::from_ints(&[[0, 1, 0], [0, 0, 1], [0, 0, 0]]);
        assert_eq!(Subspace::zero(3).preimage(&n), Subspace::coordinate(3, [0]));
    }
}
