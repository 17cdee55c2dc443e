use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{quotient_map, LinalgError, Matrix, Quotient, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// Finite filtration given by its values at finitely many indices.
///
/// Increasing: `W_k` is the step at the largest key `≤ k`, zero below all keys.
/// Decreasing: `F^p` is the step at the smallest key `≥ p`, zero above all keys.
/// The step at the outermost key must be the whole space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filtration {
    ambient: usize,
    direction: Direction,
    steps: BTreeMap<i32, Subspace>,
}

impl Filtration {
    pub fn new(
        ambient: usize,
        direction: Direction,
        steps: BTreeMap<i32, Subspace>,
    ) -> Result<Self, LinalgError> {
        let f = Filtration {
            ambient,
            direction,
            steps,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn increasing(
        ambient: usize,
        steps: impl IntoIterator<Item = (i32, Subspace)>,
    ) -> Result<Self, LinalgError> {
        Filtration::new(ambient, Direction::Increasing, steps.into_iter().collect())
    }

    pub fn decreasing(
        ambient: usize,
        steps: impl IntoIterator<Item = (i32, Subspace)>,
    ) -> Result<Self, LinalgError> {
        Filtration::new(ambient, Direction::Decreasing, steps.into_iter().collect())
    }

    /// Single jump: the whole space from index `k` on.
    pub fn trivial(ambient: usize, direction: Direction, k: i32) -> Self {
        let steps = BTreeMap::from([(k, Subspace::full(ambient))]);
        Filtration {
            ambient,
            direction,
            steps,
        }
    }

    fn validate(&self) -> Result<(), LinalgError> {
        if let Some(s) = self.steps.values().find(|s| s.ambient() != self.ambient) {
            return Err(LinalgError::Shape(format!(
                "filtration step in dimension {} for ambient {}",
                s.ambient(),
                self.ambient
            )));
        }
        let ordered: Vec<&Subspace> = match self.direction {
            Direction::Increasing => self.steps.values().collect(),
            Direction::Decreasing => self.steps.values().rev().collect(),
        };
        if ordered.windows(2).any(|w| !w[1].contains_space(w[0])) {
            return Err(LinalgError::Filtration("steps are not nested".into()));
        }
        match ordered.last() {
            Some(top) if top.is_full() => Ok(()),
            None if self.ambient == 0 => Ok(()),
            _ => Err(LinalgError::Filtration(
                "filtration is not exhaustive".into(),
            )),
        }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn steps(&self) -> &BTreeMap<i32, Subspace> {
        &self.steps
    }

    pub fn step(&self, k: i32) -> Subspace {
        let found = match self.direction {
            Direction::Increasing => self.steps.range(..=k).next_back(),
            Direction::Decreasing => self.steps.range(k..).next(),
        };
        found.map_or_else(|| Subspace::zero(self.ambient), |(_, s)| s.clone())
    }

    /// Smallest and largest indices at which the filtration can change.
    pub fn bounds(&self) -> (i32, i32) {
        let lo = self.steps.keys().next().copied().unwrap_or(0);
        let hi = self.steps.keys().next_back().copied().unwrap_or(0);
        (lo - 1, hi + 1)
    }

    /// `Gr_k` for increasing, `Gr^p` for decreasing filtrations.
    pub fn graded(&self, k: i32) -> Quotient {
        let (big, small) = match self.direction {
            Direction::Increasing => (self.step(k), self.step(k - 1)),
            Direction::Decreasing => (self.step(k), self.step(k + 1)),
        };
        quotient_map(&big, &small).expect("nested steps")
    }

    /// Indices carrying a nonzero graded piece.
    pub fn jumps(&self) -> Vec<i32> {
        let (lo, hi) = self.bounds();
        (lo..=hi).filter(|&k| self.graded(k).dim() > 0).collect()
    }

    /// Transport along an invertible change of coordinates `m`.
    pub fn map(&self, m: &Matrix) -> Result<Filtration, LinalgError> {
        let steps = self.steps.iter().map(|(&k, s)| (k, s.map(m))).collect();
        Filtration::new(m.rows(), self.direction, steps)
    }

    pub fn shift(&self, by: i32) -> Filtration {
        Filtration {
            ambient: self.ambient,
            direction: self.direction,
            steps: self
                .steps
                .iter()
                .map(|(&k, s)| (k + by, s.clone()))
                .collect(),
        }
    }

    /// Equality as filtrations (independent of the chosen keys).
    pub fn same_as(&self, other: &Filtration) -> bool {
        if self.ambient != other.ambient || self.direction != other.direction {
            return false;
        }
        let (a, b) = self.bounds();
        let (c, d) = other.bounds();
        (a.min(c)..=b.max(d)).all(|k| self.step(k) == other.step(k))
    }

    pub fn conj(&self, real_structure: &Matrix) -> Filtration {
        Filtration {
            ambient: self.ambient,
            direction: self.direction,
            steps: self
                .steps
                .iter()
                .map(|(&k, s)| (k, s.conj(real_structure)))
                .collect(),
        }
    }
}

/// `F^p ⊕ conj(F^{k+1−p}) = H` for every `p`.
pub fn check_opposed(f: &Filtration, real_structure: &Matrix, k: i32) -> bool {
    let fbar = f.conj(real_structure);
    let (lo, hi) = f.bounds();
    let n = f.ambient();
    (lo.min(k + 1 - hi)..=hi.max(k + 1 - lo)).all(|p| {
        let a = f.step(p);
        let b = fbar.step(k + 1 - p);
        a.dim() + b.dim() == n && a.intersection(&b).is_zero()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlinalg::Gauss;

    #[test]
    fn increasing_steps_extend() {
        let w = Filtration::increasing(
            2,
            [(0, Subspace::coordinate(2, [0])), (2, Subspace::full(2))],
        )
        .unwrap();
        assert_eq!(w.step(-1).dim(), 0);
        assert_eq!(w.step(1).dim(), 1);
        assert_eq!(w.step(7).dim(), 2);
        assert_eq!(w.jumps(), vec![0, 2]);
    }

    #[test]
    fn non_nested_rejected() {
        let r = Filtration::increasing(
            2,
            [
                (0, Subspace::coordinate(2, [0])),
                (1, Subspace::coordinate(2, [1])),
                (2, Subspace::full(2)),
            ],
        );
        assert!(matches!(r, Err(LinalgError::Filtration(_))));
        let r = Filtration::increasing(2, [(0, Subspace::coordinate(2, [0]))]);
        assert!(matches!(r, Err(LinalgError::Filtration(_))));
    }

    #[test]
    fn opposed_line_in_plane() {
        let line = Subspace::span_vectors(2, &[vec![Gauss::one(), Gauss::i()]]);
        let f = Filtration::decreasing(2, [(0, Subspace::full(2)), (1, line)]).unwrap();
        assert!(check_opposed(&f, &Matrix::identity(2), 1));
        let real = Filtration::decreasing(
            2,
            [(0, Subspace::full(2)), (1, Subspace::coordinate(2, [0]))],
        )
        .unwrap();
        assert!(!check_opposed(&real, &Matrix::identity(2), 1));
    }

    #[test]
    fn self_conjugate_flag_not_opposed() {
        let f = Filtration::decreasing(
            2,
            [
                (0, Subspace::full(2)),
                (1, Subspace::coordinate(2, [0])),
                (2, Subspace::zero(2)),
            ],
        )
        .unwrap();
        assert!(!check_opposed(&f, &Matrix::identity(2), 1));
    }
}
