//! Asymptotics of the period-map potential and metric, and the
//! finite/infinite distance classifier.

use serde::Serialize;
use thiserror::Error;

use crate::asymptotics::{AsymptoticScalar, EventualSign, Poly};
use crate::exactlinalg::{Gauss, Matrix};
use crate::nilpotent::{distance_index, NilpotentError, NilpotentOp};
use crate::steenbrink::{top_hodge_vector, LimitCohomology, SncInstance, SteenbrinkError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeriodError {
    #[error("ShapeError: {0}")]
    Shape(String),
    #[error("NotIsometry: N is not an infinitesimal isometry of the Gram")]
    NotIsometry,
    #[error("GramDegenerate: the degree-{d} coefficient of the potential vanishes")]
    GramDegenerate { d: usize },
    #[error("NonReal: the potential has non-real coefficients")]
    NonReal,
    #[error("MissingTopClass: F^n of the limit is not one-dimensional")]
    MissingTopClass,
    #[error(transparent)]
    Nilpotent(#[from] NilpotentError),
    #[error(transparent)]
    Steenbrink(#[from] SteenbrinkError),
}

/// Limit `a0` of a holomorphic volume section with monodromy logarithm `N`
/// and Gram `Q̃ = i^n Q`; `conj` is the real structure `v ↦ J v̄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodGerm {
    pub a0: Vec<Gauss>,
    pub n: NilpotentOp,
    pub gram: Matrix,
    pub conj: Matrix,
}

impl PeriodGerm {
    pub fn new(
        a0: Vec<Gauss>,
        n: NilpotentOp,
        gram: Matrix,
        conj: Matrix,
    ) -> Result<Self, PeriodError> {
        let dim = n.dim();
        if a0.len() != dim
            || gram.rows() != dim
            || gram.cols() != dim
            || conj.rows() != dim
            || conj.cols() != dim
        {
            return Err(PeriodError::Shape(format!(
                "germ data does not live on a {dim}-dimensional space"
            )));
        }
        if a0.iter().all(Gauss::is_zero) {
            return Err(NilpotentError::ZeroVector.into());
        }
        let nm = n.matrix();
        if !(&(&nm.transpose() * &gram) + &(&gram * nm)).is_zero() {
            return Err(PeriodError::NotIsometry);
        }
        Ok(PeriodGerm { a0, n, gram, conj })
    }

    /// Jordan block `e_0 ← e_1 ← … ← e_d` with `a0 = e_d` and `Q(e_i, e_{d−i}) = (−1)^{d−i}`.
    pub fn jordan(d: usize) -> Self {
        let dim = d + 1;
        let nm = Matrix::from_fn(dim, dim, |r, c| Gauss::int((c == r + 1) as i64));
        let q = Matrix::from_fn(dim, dim, |r, c| {
            if r + c == d {
                Gauss::int(if c % 2 == 0 { 1 } else { -1 })
            } else {
                Gauss::zero()
            }
        });
        let mut a0 = vec![Gauss::zero(); dim];
        a0[d] = Gauss::one();
        let n = NilpotentOp::new(nm, d as i32).expect("nilpotent");
        PeriodGerm::new(
            a0,
            n,
            q.scale(&Gauss::i_pow(d as i64)),
            Matrix::identity(dim),
        )
        .expect("valid Jordan germ")
    }

    /// The germ of a weight-3 limit: `a0` spans `F³`, `Q̃ = i³Q` with `Q = −∫`.
    pub fn from_limit(lim: &LimitCohomology, inst: &SncInstance) -> Result<Self, PeriodError> {
        let a0 = top_hodge_vector(lim, 3).ok_or(PeriodError::MissingTopClass)?;
        let cup = lim
            .intersection_form(inst)?
            .ok_or_else(|| PeriodError::Shape("no pairing outside weights 2..4 of H³".into()))?;
        PeriodGerm::new(
            a0,
            lim.monodromy.clone(),
            cup.scale(&Gauss::i()),
            lim.mhs.conj.clone(),
        )
    }

    pub fn dim(&self) -> usize {
        self.a0.len()
    }

    pub fn a0_bar(&self) -> Vec<Gauss> {
        let c: Vec<Gauss> = self.a0.iter().map(Gauss::conj).collect();
        self.conj.mul_vec(&c)
    }

    /// `Q̃(u, v)`
    pub fn pair(&self, u: &[Gauss], v: &[Gauss]) -> Gauss {
        let gv = self.gram.mul_vec(v);
        u.iter().zip(&gv).map(|(a, b)| a * b).sum()
    }

    pub fn distance_index(&self) -> Result<usize, PeriodError> {
        Ok(distance_index(&self.a0, &self.n)?)
    }

    /// `(2i)^k/k! · Q̃(N^k a0, ā0)`
    pub fn coefficient(&self, k: usize) -> Gauss {
        let nk = self.n.matrix().pow(k as u32).mul_vec(&self.a0);
        let factorial: i64 = (1..=k as i64).product();
        &(&Gauss::complex(0, 2).pow(k as u32) * &Gauss::ratio(1, factorial))
            * &self.pair(&nk, &self.a0_bar())
    }
}

/// `Q̃(e^{zN} a(t), conj) = p(y) + h`, `p(y) = Σ_k (2iy)^k/k! · Q̃(N^k a0, ā0)`.
pub fn potential_asymptote(g: &PeriodGerm) -> Result<AsymptoticScalar, PeriodError> {
    let d = g.distance_index()?;
    let poly = (0..=d).fold(Poly::zero(), |acc, k| {
        &acc + &Poly::monomial(g.coefficient(k), 0, k as i32)
    });
    if poly.coeff(0, d as i32).is_zero() {
        return Err(PeriodError::GramDegenerate { d });
    }
    if poly.terms().any(|(_, c)| !c.is_real()) {
        return Err(PeriodError::NonReal);
    }
    Ok(AsymptoticScalar::new(poly, true))
}

/// `−∂²_y log p = (p′² − p p″)/p²` as an exact numerator and denominator.
pub fn metric_rational(g: &PeriodGerm) -> Result<(Poly, Poly), PeriodError> {
    let p = potential_asymptote(g)?.poly;
    let (dp, ddp) = (p.dy(), p.dy().dy());
    Ok((&(&dp * &dp) - &(&p * &ddp), &p * &p))
}

/// `d/y² + h`; the exact quotient when the potential is a monomial, otherwise
/// its leading term with lower orders folded into the tail.
pub fn metric_asymptote(g: &PeriodGerm) -> Result<AsymptoticScalar, PeriodError> {
    let (num, den) = metric_rational(g)?;
    if num.is_zero() {
        return Ok(AsymptoticScalar::pure_tail());
    }
    let poly = num.exact_div(&den).unwrap_or_else(|| {
        let (a, ca) = num.leading_y().expect("x-free");
        let (b, cb) = den.leading_y().expect("x-free");
        Poly::monomial(&ca / &cb, 0, a - b)
    });
    Ok(AsymptoticScalar::new(poly, true))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceClass {
    Infinite,
    Finite,
    FiniteConditional,
}

impl DistanceClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            DistanceClass::Infinite => "infinite",
            DistanceClass::Finite => "finite",
            DistanceClass::FiniteConditional => "finite-conditional",
        }
    }
}

/// `polarization_ok = None` means the positivity verdict was not decidable.
pub fn classify_distance(
    g: &PeriodGerm,
    polarization_ok: Option<bool>,
) -> Result<DistanceClass, PeriodError> {
    Ok(match (g.distance_index()?, polarization_ok) {
        (d, _) if d > 0 => DistanceClass::Infinite,
        (_, Some(true)) => DistanceClass::Finite,
        _ => DistanceClass::FiniteConditional,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LengthBound {
    DivergentLower,
    ConvergentUpper,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LengthWitness {
    pub bound: LengthBound,
    pub integral: String,
    pub conditional: bool,
}

/// Which curve-length estimate along `y → ∞` decides the class.
pub fn length_witness(g: &PeriodGerm, class: DistanceClass) -> Result<LengthWitness, PeriodError> {
    let d = g.distance_index()?;
    Ok(match class {
        DistanceClass::Infinite => LengthWitness {
            bound: LengthBound::DivergentLower,
            integral: format!("∫ √({d}−ε)/y dy = ∞"),
            conditional: false,
        },
        DistanceClass::Finite | DistanceClass::FiniteConditional => LengthWitness {
            bound: LengthBound::ConvergentUpper,
            integral: "∫ ε e^{−δy/2} dy < ∞".into(),
            conditional: class == DistanceClass::FiniteConditional,
        },
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceReport {
    pub d: usize,
    pub distance: DistanceClass,
    pub potential: String,
    pub metric: String,
    /// Leading coefficient of `p` against `Q̃(a0, N^d ā0)`, which differs by `(−1)^d (2i)^d/d!`.
    pub leading: String,
    pub witness: LengthWitness,
}

pub fn distance_report(
    g: &PeriodGerm,
    polarization_ok: Option<bool>,
) -> Result<DistanceReport, PeriodError> {
    let d = g.distance_index()?;
    let p = potential_asymptote(g)?;
    let metric = metric_asymptote(g)?;
    let distance = classify_distance(g, polarization_ok)?;
    let nd_bar = g.n.matrix().pow(d as u32).mul_vec(&g.a0_bar());
    let paired = g.pair(&g.a0, &nd_bar);
    Ok(DistanceReport {
        d,
        distance,
        potential: p.to_string(),
        metric: metric.to_string(),
        leading: format!("{} = (-1)^{d}(2i)^{d}/{d}! * {paired}", g.coefficient(d)),
        witness: length_witness(g, distance)?,
    })
}

/// Sign of the potential for `y ≫ 0`; positive on a polarized limit.
pub fn potential_sign(g: &PeriodGerm) -> Result<EventualSign, PeriodError> {
    Ok(potential_asymptote(g)?.eventual_sign())
}
