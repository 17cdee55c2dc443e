//! Top wedge, period matrix and polarization of an untwisted frame.

use serde::Serialize;

use super::{AsymptoticFrame, FrameError, FrameShape, LimitFrameSpec};
use crate::asymptotics::{
    poly_det, AsymptoticHermitian, AsymptoticMatrix, AsymptoticScalar, PaperShaped, Poly,
};
use crate::exactlinalg::{Gauss, HermitianForm, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DdbarVerdict {
    Holds,
    Fails,
    Indeterminate,
}

impl DdbarVerdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            DdbarVerdict::Holds => "holds",
            DdbarVerdict::Fails => "fails",
            DdbarVerdict::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WedgeReport {
    pub verdict: DdbarVerdict,
    /// Polynomial part of `⋀ u′∧ū′ ∧ ⋀ v′∧v̄′ (∧ f′∧f̄′ ∧ g′∧ḡ′)` in the real basis.
    pub leading: String,
    /// `κ` with wedge `= κ · Π_q 2i(y − Im x_qq)`, when that factorization is exact.
    pub kappa: Option<String>,
    /// `w₁₁w̄₁₂ − w₁₂w̄₁₁` for the Hashimoto–Sano shape.
    pub w_determinant: Option<String>,
    #[serde(skip)]
    pub determinant: Poly,
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    parent[i] = r;
    r
}

fn permutation_sign(order: &[usize]) -> bool {
    let mut seen = vec![false; order.len()];
    let mut odd = false;
    for start in 0..order.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = order[k];
            len += 1;
        }
        odd ^= len % 2 == 0;
    }
    odd
}

/// Determinant as a product over connected blocks of the nonzero pattern.
fn block_determinant(p: &[Vec<Poly>]) -> Poly {
    let n = p.len();
    let mut parent: Vec<usize> = (0..2 * n).collect();
    for (r, row) in p.iter().enumerate() {
        for (c, e) in row.iter().enumerate() {
            if !e.is_zero() {
                let (a, b) = (find(&mut parent, r), find(&mut parent, n + c));
                parent[a] = b;
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, (Vec<usize>, Vec<usize>)> =
        Default::default();
    for i in 0..2 * n {
        let root = find(&mut parent, i);
        let entry = groups.entry(root).or_default();
        if i < n {
            entry.0.push(i);
        } else {
            entry.1.push(i - n);
        }
    }
    let (mut rows, mut cols) = (Vec::new(), Vec::new());
    let mut det = Poly::int(1);
    for (rs, cs) in groups.values() {
        if rs.len() != cs.len() {
            return Poly::zero();
        }
        let block: Vec<Vec<Poly>> = rs
            .iter()
            .map(|&r| cs.iter().map(|&c| p[r][c].clone()).collect())
            .collect();
        det = &det * &poly_det(&block);
        rows.extend(rs);
        cols.extend(cs);
    }
    if permutation_sign(&rows) ^ permutation_sign(&cols) {
        -det
    } else {
        det
    }
}

fn conj_vec(v: &[AsymptoticScalar]) -> Vec<AsymptoticScalar> {
    v.iter().map(AsymptoticScalar::conj).collect()
}

/// Nonvanishing of the top wedge of `F²_t ⊕ F̄²_t` from its polynomial part.
pub fn ddbar_wedge_verdict(
    frame: &AsymptoticFrame,
    spec: &LimitFrameSpec,
) -> Result<WedgeReport, FrameError> {
    let dim = spec.dim();
    if 2 * frame.len() != dim {
        return Err(FrameError::Shape(format!(
            "{} frame vectors for a {dim}-dimensional space",
            frame.len()
        )));
    }
    let columns: Vec<Vec<AsymptoticScalar>> = frame
        .vectors
        .iter()
        .flat_map(|v| [v.clone(), conj_vec(v)])
        .collect();
    let p: Vec<Vec<Poly>> = (0..dim)
        .map(|r| columns.iter().map(|c| c[r].poly.clone()).collect())
        .collect();
    let det = block_determinant(&p);
    if det.depends_on_x() {
        return Err(FrameError::Consistency(format!(
            "Re z survives in the top wedge {det}"
        )));
    }
    let m = spec.shape.m();
    let half = Gauss::ratio(1, 2);
    let product = (0..m).fold(Poly::int(1), |acc, q| {
        let x = &spec.x[(q, q)];
        let im = &(&(x - &x.conj()) * &half) * &-Gauss::i();
        let factor =
            &Poly::y().scale(&Gauss::complex(0, 2)) - &Poly::constant(&Gauss::complex(0, 2) * &im);
        &acc * &factor
    });
    let kappa = det.exact_div(&product).and_then(|k| k.as_constant());
    let verdict = match (&kappa, det.is_zero()) {
        (_, true) => DdbarVerdict::Fails,
        (Some(_), false) => DdbarVerdict::Holds,
        (None, false) => DdbarVerdict::Indeterminate,
    };
    let w_determinant = match spec.shape {
        FrameShape::HashimotoSano { .. } => spec
            .w
            .as_ref()
            .map(|w| (&w[(0, 0)] * &w[(0, 1)].conj() - &w[(0, 1)] * &w[(0, 0)].conj()).to_string()),
        FrameShape::Clemens { .. } => None,
    };
    Ok(WedgeReport {
        verdict,
        leading: det.to_string(),
        kappa: kappa.map(|k| k.to_string()),
        w_determinant,
        determinant: det,
    })
}

/// `M(a, b) = −i ∫ a ∪ b̄` on the frame vectors.
pub fn period_matrix(
    frame: &AsymptoticFrame,
    spec: &LimitFrameSpec,
) -> Result<AsymptoticHermitian, FrameError> {
    let g = &spec.gram;
    let dim = spec.dim();
    let paired: Vec<Vec<AsymptoticScalar>> = frame
        .vectors
        .iter()
        .map(|b| {
            let bb = conj_vec(b);
            (0..dim)
                .map(|i| {
                    (0..dim)
                        .filter(|&j| !g[(i, j)].is_zero())
                        .map(|j| bb[j].scale(&g[(i, j)]))
                        .sum()
                })
                .collect()
        })
        .collect();
    let minus_i = -Gauss::i();
    let k = frame.len();
    let mut entries = Vec::with_capacity(k);
    for a in &frame.vectors {
        let mut row = Vec::with_capacity(k);
        for gb in &paired {
            let s: AsymptoticScalar = a.iter().zip(gb).map(|(x, y)| x * y).sum();
            let s = s.scale(&minus_i);
            if s.poly.depends_on_x() {
                return Err(FrameError::Consistency(format!(
                    "Re z survives in a period matrix entry {s}"
                )));
            }
            row.push(s);
        }
        entries.push(row);
    }
    Ok(AsymptoticHermitian::new(AsymptoticMatrix::from_rows(
        entries,
    )?)?)
}

/// `a∞_{pq̄} = M(u_p, ū_q)` on the `I^{2,1}` directions.
pub fn a_infinity(spec: &LimitFrameSpec) -> Matrix {
    let h = spec.shape.h();
    let nb = spec.shape.betas();
    let g = &spec.gram;
    Matrix::from_fn(h, h, |p, q| {
        let s: Gauss = (0..nb)
            .flat_map(|i| (0..nb).map(move |j| (i, j)))
            .map(|(i, j)| {
                &(&spec.b[(p, i)] * &g[(spec.beta(i), spec.beta(j))]) * &spec.b[(q, j)].conj()
            })
            .sum();
        &s * &-Gauss::i()
    })
}

/// `q_rs = −∫ δ_r ∪ α_s`; the `D` block grows like `2y q`.
pub fn q_matrix(spec: &LimitFrameSpec) -> Matrix {
    let m = spec.shape.m();
    Matrix::from_fn(m, m, |r, s| -&spec.gram[(spec.gamma(r), spec.alpha(s))])
}

fn constant_pd(m: &Matrix) -> bool {
    m.rows() == 0
        || HermitianForm::untwisted(m.clone())
            .and_then(|f| f.positive_definite())
            .unwrap_or(false)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolarizationOutcome {
    pub polarized: bool,
    pub a_infinity_pd: bool,
    pub q_pd: bool,
    pub negative_index: usize,
    pub expected_negative: usize,
}

impl PolarizationOutcome {
    pub fn compute(frame: &AsymptoticFrame, spec: &LimitFrameSpec) -> Result<Self, FrameError> {
        let (a_pd, q_pd) = (constant_pd(&a_infinity(spec)), constant_pd(&q_matrix(spec)));
        let m = period_matrix(frame, spec)?;
        let negative_index = m.eventual_negative_index()?;
        let polarized = polarization_verdict(frame, spec, a_pd, q_pd)?;
        Ok(PolarizationOutcome {
            polarized,
            a_infinity_pd: a_pd,
            q_pd,
            negative_index,
            expected_negative: frame.top,
        })
    }
}

/// Period matrix positive on the `I^{2,1}` and `δ` directions and negative on `F³`,
/// read off as the number of sign changes of its leading minors.
pub fn polarization_verdict(
    frame: &AsymptoticFrame,
    spec: &LimitFrameSpec,
    a_infinity_pd: bool,
    q_pd: bool,
) -> Result<bool, FrameError> {
    let m = period_matrix(frame, spec)?;
    let verdict = if frame.top == 0 {
        m.eventually_positive_definite()?
    } else {
        m.eventual_negative_index()? == frame.top
    };
    if a_infinity_pd && q_pd && !verdict {
        return Err(FrameError::Consistency(
            "positive a∞ and q but the period matrix is not polarized".into(),
        ));
    }
    Ok(verdict)
}

/// The `I^{2,1}` rows against the `δ` rows of the period matrix, as Schur blocks.
pub fn paper_blocks(
    frame: &AsymptoticFrame,
    spec: &LimitFrameSpec,
) -> Result<PaperShaped, FrameError> {
    let full = period_matrix(frame, spec)?;
    let (h, m) = (spec.shape.h(), spec.shape.m());
    let mm = full.matrix();
    Ok(PaperShaped {
        a: mm.block(0, 0, h, h),
        b: mm.block(0, h, h, m),
        c: mm.block(h, 0, m, h),
        d: mm.block(h, h, m, m),
    })
}
