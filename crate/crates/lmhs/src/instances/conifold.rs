//! Small resolution `Ỹ` of a nodal threefold with each exceptional curve
//! `C_i` blown up to a quadric `Q_i`, meeting `Ỹ` along `E_i ≅ P¹ × P¹`.

use super::builder::{diag, g, piece, point, real_degree, restriction};
use super::InstanceError;
use crate::exactlinalg::{Gauss, Matrix};
use crate::steenbrink::{DegreeData, KahlerData, SncInstance, Stratum};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConifoldParams {
    /// `curve_classes[i][j] = D_j · C_i`.
    pub curve_classes: Vec<Vec<i64>>,
    /// Rows `m` with `Σ m_i [C_i] = 0`.
    pub relations: Vec<Vec<i64>>,
    /// `h^{2,1}` of the smoothing-side threefold.
    pub h21: usize,
}

impl Default for ConifoldParams {
    fn default() -> Self {
        ConifoldParams {
            curve_classes: vec![vec![1], vec![1]],
            relations: vec![vec![1, -1]],
            h21: 1,
        }
    }
}

impl ConifoldParams {
    pub fn curves(&self) -> usize {
        self.curve_classes.len()
    }

    pub fn picard(&self) -> usize {
        self.curve_classes.first().map_or(0, Vec::len)
    }

    /// Relations must make the degeneration smoothable: some relation involves every curve,
    /// every curve class is nonzero, and each relation holds in `H_2(Ỹ)`.
    pub fn check(&self) -> Result<(), InstanceError> {
        let (r, rho) = (self.curves(), self.picard());
        let fail = |why: String| Err(InstanceError::FriedmanConditionFailure(why));
        if r == 0 {
            return fail("no exceptional curves".into());
        }
        if self.curve_classes.iter().any(|row| row.len() != rho) {
            return fail("curve class rows have unequal length".into());
        }
        if let Some(i) = self
            .curve_classes
            .iter()
            .position(|row| row.iter().all(|&x| x == 0))
        {
            return fail(format!("curve C{} is homologous to zero", i + 1));
        }
        for m in &self.relations {
            if m.len() != r {
                return fail(format!("relation {m:?} has the wrong length"));
            }
            for j in 0..rho {
                let total: i64 = m
                    .iter()
                    .zip(&self.curve_classes)
                    .map(|(mi, row)| mi * row[j])
                    .sum();
                if total != 0 {
                    return fail(format!("relation {m:?} fails against divisor D{}", j + 1));
                }
            }
        }
        if !self.relations.iter().any(|m| m.iter().all(|&x| x != 0)) {
            return fail("no relation involves every exceptional curve".into());
        }
        Ok(())
    }

    /// Rank of the matrix of curve classes.
    pub fn class_rank(&self) -> usize {
        Matrix::from_ints(&self.curve_classes).rank()
    }
}

fn middle_degree(k: usize) -> DegreeData {
    let mut types = vec![(3, 0)];
    types.extend(vec![(2, 1); k]);
    types.extend(vec![(1, 2); k]);
    types.push((0, 3));
    let n = 2 * k + 2;
    let mut conj = Matrix::zeros(n, n);
    let mut gram = Matrix::zeros(n, n);
    conj[(0, n - 1)] = Gauss::one();
    conj[(n - 1, 0)] = Gauss::one();
    gram[(0, n - 1)] = -Gauss::i();
    gram[(n - 1, 0)] = Gauss::i();
    for j in 0..k {
        let (e, eb) = (1 + j, 1 + k + j);
        conj[(e, eb)] = Gauss::one();
        conj[(eb, e)] = Gauss::one();
        gram[(e, eb)] = Gauss::i();
        gram[(eb, e)] = -Gauss::i();
    }
    DegreeData::from_types(&types, conj, gram)
}

pub fn conifold_instance(params: &ConifoldParams) -> Result<SncInstance, InstanceError> {
    params.check()?;
    let (r, rho) = (params.curves(), params.picard());
    let b2 = rho + r;
    let mut signs = vec![1; rho];
    signs.extend(vec![-1; r]);
    let resolved = piece(
        "Y",
        vec![0],
        vec![
            (0, point(0)),
            (2, real_degree(b2, 1, diag(&signs))),
            (3, middle_degree(params.h21)),
            (4, real_degree(b2, 2, diag(&signs))),
            (6, point(3)),
        ],
    );
    let mut depth1 = vec![resolved];
    let mut depth2 = Vec::new();
    let mut restrictions = Vec::new();
    let mut kahler = KahlerData::new();
    for i in 0..r {
        let (q, e) = (format!("Q{}", i + 1), format!("E{}", i + 1));
        depth1.push(piece(
            &q,
            vec![i + 1],
            vec![(0, point(0)), (2, point(1)), (4, point(2)), (6, point(3))],
        ));
        depth2.push(piece(
            &e,
            vec![0, i + 1],
            vec![
                (0, point(0)),
                (2, real_degree(2, 1, Matrix::from_ints(&[[0, 1], [1, 0]]))),
                (4, point(2)),
            ],
        ));
        let mut from_y = Matrix::zeros(2, b2);
        for j in 0..rho {
            from_y[(0, j)] = g(params.curve_classes[i][j]);
        }
        from_y[(0, rho + i)] = g(-1);
        from_y[(1, rho + i)] = g(-1);
        let mut top_y = Matrix::zeros(1, b2);
        top_y[(0, rho + i)] = g(-1);
        restrictions.extend([
            restriction("Y", &e, 0, Matrix::identity(1)),
            restriction(&q, &e, 0, Matrix::identity(1)),
            restriction("Y", &e, 2, from_y),
            restriction(&q, &e, 2, Matrix::from_ints(&[[1], [1]])),
            restriction("Y", &e, 4, top_y),
            restriction(&q, &e, 4, Matrix::identity(1)),
        ]);
        kahler.insert(
            e.clone(),
            [
                (0, Matrix::from_ints(&[[1], [1]])),
                (2, Matrix::from_ints(&[[1, 1]])),
            ]
            .into_iter()
            .collect(),
        );
        kahler.insert(
            q.clone(),
            [
                (0, Matrix::identity(1)),
                (2, Matrix::from_ints(&[[2]])),
                (4, Matrix::identity(1)),
            ]
            .into_iter()
            .collect(),
        );
    }
    Ok(SncInstance {
        name: format!("conifold(r={r}, rho={rho}, h21={})", params.h21),
        fiber_dim: 3,
        strata: vec![
            Stratum {
                depth: 1,
                pieces: depth1,
            },
            Stratum {
                depth: 2,
                pieces: depth2,
            },
        ],
        restrictions,
        kahler: Some(kahler),
        a0: None,
        frame: None,
    })
}
