use super::complex::{graded_piece, monodromy_on_terms, stratum_gram, E1Term, GradedPiece};
use super::instance::SncInstance;
use super::SteenbrinkError;
use crate::exactlinalg::{ExactScalar, Gauss, HermitianForm, Matrix};

/// `∫ x ∪ y` over a stratum, in plain coordinates.
fn integrate(
    inst: &SncInstance,
    depth: usize,
    degree: i64,
    x: &[Gauss],
    y: &[Gauss],
) -> Result<Gauss, SteenbrinkError> {
    if x.is_empty() || y.is_empty() {
        return Ok(Gauss::zero());
    }
    let g = stratum_gram(inst, depth, degree)?;
    Ok(x.iter().zip(g.mul_vec(y)).map(|(a, b)| a * &b).sum())
}

/// One term `(2πi)^{n} (−1)^n (2πi)^{−k} ∫ u_p ∪ v_q` of a graded pairing.
struct PairingTerm {
    k: i32,
    p_left: i32,
    p_right: i32,
}

fn evaluate(
    inst: &SncInstance,
    left: &E1Term,
    right: &E1Term,
    terms: &[PairingTerm],
    u: &[Gauss],
    v: &[Gauss],
) -> Result<ExactScalar, SteenbrinkError> {
    let n = inst.fiber_dim as i32;
    let sign = if n % 2 == 0 {
        Gauss::one()
    } else {
        -Gauss::one()
    };
    let mut total = ExactScalar::zero();
    for t in terms {
        let (Some(sl), Some(_)) = (left.summand(t.p_left), right.summand(t.p_right)) else {
            continue;
        };
        let raw = integrate(
            inst,
            sl.depth,
            sl.degree,
            &left.extract(u, t.p_left),
            &right.extract(v, t.p_right),
        )?;
        let integral = ExactScalar::two_pi_i_pow(left.twist(t.p_left) + right.twist(t.p_right))
            * ExactScalar::untwisted(raw);
        let term = ExactScalar::two_pi_i_pow(n)
            * ExactScalar::untwisted(sign.clone())
            * ExactScalar::two_pi_i_pow(-t.k)
            * integral;
        total = total.checked_add(&term)?;
    }
    Ok(total)
}

/// Graded pieces of `H^3` carrying the two displayed pairings.
#[derive(Clone, Debug)]
pub struct Pairings {
    pub gr2: GradedPiece,
    pub gr3: GradedPiece,
    pub gr4: GradedPiece,
}

impl Pairings {
    pub fn new(inst: &SncInstance) -> Result<Self, SteenbrinkError> {
        if inst.fiber_dim != 3 {
            return Err(SteenbrinkError::Unsupported(format!(
                "graded pairings need fiber dimension 3, got {}",
                inst.fiber_dim
            )));
        }
        Ok(Pairings {
            gr2: graded_piece(inst, 3, 2)?,
            gr3: graded_piece(inst, 3, 3)?,
            gr4: graded_piece(inst, 3, 4)?,
        })
    }

    fn require_cocycle(piece: &GradedPiece, v: &[Gauss]) -> Result<(), SteenbrinkError> {
        if piece.is_cocycle(v) {
            Ok(())
        } else {
            Err(SteenbrinkError::NotACocycle { w: piece.w() })
        }
    }

    /// `⟨(α,β),(γ,δ)⟩` on `Gr_3 H^3`: terms over `E(1)` with `k = 3` and `E(3)` with `k = 1`.
    pub fn gr33(
        &self,
        inst: &SncInstance,
        u: &[Gauss],
        v: &[Gauss],
    ) -> Result<ExactScalar, SteenbrinkError> {
        Self::require_cocycle(&self.gr3, u)?;
        Self::require_cocycle(&self.gr3, v)?;
        let mid = &self.gr3.complex.mid;
        let terms = [
            PairingTerm {
                k: 3,
                p_left: 0,
                p_right: 0,
            },
            PairingTerm {
                k: 1,
                p_left: 1,
                p_right: 1,
            },
        ];
        evaluate(inst, mid, mid, &terms, u, v)
    }

    /// `⟨u, v⟩` for `u ∈ Gr_4`, `v ∈ Gr_2`: terms over `E(2)` with `k = 2` and `E(4)` with `k = 0`.
    pub fn gr24(
        &self,
        inst: &SncInstance,
        u: &[Gauss],
        v: &[Gauss],
    ) -> Result<ExactScalar, SteenbrinkError> {
        Self::require_cocycle(&self.gr4, u)?;
        Self::require_cocycle(&self.gr2, v)?;
        let terms = [
            PairingTerm {
                k: 2,
                p_left: 0,
                p_right: 1,
            },
            PairingTerm {
                k: 0,
                p_left: 1,
                p_right: 2,
            },
        ];
        evaluate(
            inst,
            &self.gr4.complex.mid,
            &self.gr2.complex.mid,
            &terms,
            u,
            v,
        )
    }

    /// `N` on `mid` coordinates from `Gr_4` to `Gr_2`.
    pub fn monodromy_mid(&self) -> Matrix {
        monodromy_on_terms(&self.gr4.complex.mid, &self.gr2.complex.mid)
    }

    /// Hermitian form `H_3(u,v) = ⟨Cu, v̄⟩_{33}` on `Gr_3`, after primitive modification.
    pub fn gr3_hermitian(&self, inst: &SncInstance) -> Result<HermitianForm, SteenbrinkError> {
        let piece = &self.gr3;
        let reps = primitive_reps(inst, piece)?;
        let weil: Vec<Gauss> = piece
            .types
            .iter()
            .map(|&(p, q)| Gauss::i_pow((p - q) as i64))
            .collect();
        let n = piece.dim();
        let mut h = Matrix::zeros(n, n);
        for j in 0..n {
            let cu: Vec<Gauss> = reps[j].iter().map(|x| x * &weil[j]).collect();
            for k in 0..n {
                let vbar = piece.conj_cocycle(inst, &reps[k]);
                h[(k, j)] = untwisted(self.gr33(inst, &cu, &vbar)?)?;
            }
        }
        Ok(HermitianForm::untwisted(h)?)
    }

    /// Hermitian form `H_4(u,v) = −⟨Cu, N v̄⟩_{24}` on `Gr_4`.
    ///
    /// In Tate-twisted coordinates `N` is `−id` on shared summands; the
    /// residual `2πi` it carries is absorbed into the overall sign.
    pub fn gr4_hermitian(&self, inst: &SncInstance) -> Result<HermitianForm, SteenbrinkError> {
        let piece = &self.gr4;
        let reps = primitive_reps(inst, piece)?;
        let weil: Vec<Gauss> = piece
            .types
            .iter()
            .map(|&(p, q)| Gauss::i_pow((p - q) as i64))
            .collect();
        let n_mid = self.monodromy_mid();
        let n = piece.dim();
        let mut h = Matrix::zeros(n, n);
        for j in 0..n {
            let cu: Vec<Gauss> = reps[j].iter().map(|x| x * &weil[j]).collect();
            for k in 0..n {
                let nvbar = n_mid.mul_vec(&piece.conj_cocycle(inst, &reps[k]));
                h[(k, j)] = -untwisted(self.gr24(inst, &cu, &nvbar)?)?;
            }
        }
        Ok(HermitianForm::untwisted(h)?)
    }
}

fn untwisted(s: ExactScalar) -> Result<Gauss, SteenbrinkError> {
    if s.twist != 0 && !s.is_zero() {
        return Err(SteenbrinkError::Twist(s.twist));
    }
    Ok(s.coeff)
}

pub fn pairing_gr33(
    inst: &SncInstance,
    u: &[Gauss],
    v: &[Gauss],
) -> Result<ExactScalar, SteenbrinkError> {
    Pairings::new(inst)?.gr33(inst, u, v)
}

pub fn pairing_gr24(
    inst: &SncInstance,
    u: &[Gauss],
    v: &[Gauss],
) -> Result<ExactScalar, SteenbrinkError> {
    Pairings::new(inst)?.gr24(inst, u, v)
}

/// Lefschetz operator of the Kähler class on `H^d(E(depth))`, or `None` if the target vanishes.
fn lefschetz(inst: &SncInstance, depth: usize, d: i64) -> Result<Option<Matrix>, SteenbrinkError> {
    let target = inst.stratum_rank(depth, d + 2);
    let source = inst.stratum_rank(depth, d);
    if target == 0 || source == 0 {
        return Ok(None);
    }
    let kahler = inst
        .kahler
        .as_ref()
        .ok_or_else(|| SteenbrinkError::HypothesisFailure("Kähler data missing".into()))?;
    let mut blocks = Vec::new();
    for p in inst.pieces_at(depth) {
        let (rs, rt) = (p.rank(d), p.rank(d + 2));
        if rs == 0 && rt == 0 {
            continue;
        }
        let op = kahler
            .get(&p.id)
            .and_then(|per| per.get(&(d as u32)))
            .cloned();
        match op {
            Some(m) => blocks.push(m),
            None if rs == 0 || rt == 0 => blocks.push(Matrix::zeros(rt, rs)),
            None => {
                return Err(SteenbrinkError::HypothesisFailure(format!(
                    "Kähler operator missing on piece {} degree {d}",
                    p.id
                )))
            }
        }
    }
    Ok(Some(Matrix::block_diagonal(&blocks)))
}

/// Shift a cocycle of `piece` by an element of `im(a)` so its first
/// component is primitive; returned unchanged when `L` has zero target.
pub fn primitive_modify(
    inst: &SncInstance,
    piece: &GradedPiece,
    rep: &[Gauss],
) -> Result<Vec<Gauss>, SteenbrinkError> {
    let mid = &piece.complex.mid;
    let Some(first) = mid.summands.first() else {
        return Ok(rep.to_vec());
    };
    let Some(l) = lefschetz(inst, first.depth, first.degree)? else {
        return Ok(rep.to_vec());
    };
    let restrict = mid.inclusion(first.p).transpose();
    let l_mid = &l * &restrict;
    let current = l_mid.mul_vec(rep);
    if current.iter().all(Gauss::is_zero) {
        return Ok(rep.to_vec());
    }
    let system = &l_mid * &piece.complex.a;
    let rhs: Vec<Gauss> = current.iter().map(|x| -x).collect();
    let x = system.solve_vec(&rhs).ok_or_else(|| {
        SteenbrinkError::HypothesisFailure(format!(
            "Lefschetz map restricted to im(a) does not reach the class in Gr_{} H^{}",
            piece.w(),
            piece.m()
        ))
    })?;
    let shift = piece.complex.a.mul_vec(&x);
    Ok(rep.iter().zip(shift).map(|(r, s)| r + &s).collect())
}

fn primitive_reps(
    inst: &SncInstance,
    piece: &GradedPiece,
) -> Result<Vec<Vec<Gauss>>, SteenbrinkError> {
    (0..piece.dim())
        .map(|j| primitive_modify(inst, piece, &piece.rep(j)))
        .collect()
}

/// Positivity of `Q(Cu, v̄)` on `Gr_3 H^3` built from the graded pairing.
pub fn gr3_polarization_verdict(inst: &SncInstance) -> Result<bool, SteenbrinkError> {
    let form = Pairings::new(inst)?.gr3_hermitian(inst)?;
    if form.dim() == 0 {
        return Ok(true);
    }
    Ok(form.positive_definite()?)
}

pub fn gr4_positivity(inst: &SncInstance) -> Result<bool, SteenbrinkError> {
    let form = Pairings::new(inst)?.gr4_hermitian(inst)?;
    if form.dim() == 0 {
        return Ok(true);
    }
    Ok(form.positive_definite()?)
}

/// Result of testing that a graded pairing vanishes when one argument is a coboundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingCheck {
    pub pairing: &'static str,
    pub evaluations: usize,
    pub nonzero: usize,
}

impl PairingCheck {
    pub fn passed(&self) -> bool {
        self.nonzero == 0
    }
}

type PairingFn<'a> = &'a dyn Fn(&[Gauss], &[Gauss]) -> Result<ExactScalar, SteenbrinkError>;

/// Evaluate both pairings on every (coboundary, cocycle) pair of basis vectors, in both slots.
pub fn pairing_well_defined(inst: &SncInstance) -> Result<Vec<PairingCheck>, SteenbrinkError> {
    let p = Pairings::new(inst)?;
    let image = |piece: &GradedPiece| piece.image.vectors();
    let kernel = |piece: &GradedPiece| piece.kernel.vectors();
    let count = |name: &'static str,
                 pairs: Vec<(Vec<Gauss>, Vec<Gauss>)>,
                 f: PairingFn|
     -> Result<PairingCheck, SteenbrinkError> {
        let mut check = PairingCheck {
            pairing: name,
            evaluations: 0,
            nonzero: 0,
        };
        for (u, v) in pairs {
            check.evaluations += 1;
            if !f(&u, &v)?.is_zero() {
                check.nonzero += 1;
            }
        }
        Ok(check)
    };
    let cross = |left: Vec<Vec<Gauss>>, right: Vec<Vec<Gauss>>| {
        left.iter()
            .flat_map(|u| right.iter().map(move |v| (u.clone(), v.clone())))
            .collect::<Vec<_>>()
    };
    let mut gr33_pairs = cross(image(&p.gr3), kernel(&p.gr3));
    gr33_pairs.extend(cross(kernel(&p.gr3), image(&p.gr3)));
    let mut gr24_pairs = cross(image(&p.gr4), kernel(&p.gr2));
    gr24_pairs.extend(cross(kernel(&p.gr4), image(&p.gr2)));
    Ok(vec![
        count("gr33", gr33_pairs, &|u, v| p.gr33(inst, u, v))?,
        count("gr24", gr24_pairs, &|u, v| p.gr24(inst, u, v))?,
    ])
}
