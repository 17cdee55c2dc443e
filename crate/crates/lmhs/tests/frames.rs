use lmhs::asymptotics::{AsymptoticScalar, Poly};
use lmhs::exactlinalg::{Gauss, Matrix};
use lmhs::frames::*;
use lmhs::instances::{conifold_instance, hashimoto_sano_instance, ConifoldParams};
use lmhs::steenbrink::{limit_cohomology, SncInstance};

/// Clemens-shaped spec in the basis `[α, β, γ]` with `∫ α_l ∪ γ_l = q` and
/// `∫ β_{2k} ∪ β_{2k+1} = 1`.
fn toy_clemens(b: Matrix, m: usize, q: i64, x: Matrix) -> LimitFrameSpec {
    let h = b.rows() - 1;
    let shape = FrameShape::Clemens { h, m };
    let nb = shape.betas();
    let dim = shape.dim();
    let mut n = Matrix::zeros(dim, dim);
    let mut gram = Matrix::zeros(dim, dim);
    for l in 0..m {
        n[(l, m + nb + l)] = Gauss::one();
        gram[(l, m + nb + l)] = Gauss::int(q);
        gram[(m + nb + l, l)] = Gauss::int(-q);
    }
    for k in 0..nb / 2 {
        gram[(m + 2 * k, m + 2 * k + 1)] = Gauss::one();
        gram[(m + 2 * k + 1, m + 2 * k)] = -Gauss::one();
    }
    let spec = LimitFrameSpec {
        shape,
        basis: Matrix::identity(dim),
        n,
        gram,
        x,
        b,
        w: None,
        y: None,
    };
    spec.check().unwrap();
    spec
}

fn row(entries: &[Gauss]) -> Vec<Gauss> {
    entries.to_vec()
}

fn g(re: i64, im: i64) -> Gauss {
    Gauss::complex(re, im)
}

fn jordan_pair(x: Gauss) -> LimitFrameSpec {
    toy_clemens(
        Matrix::from_rows(vec![row(&[g(1, 0), g(0, 1)])]),
        1,
        1,
        Matrix::from_rows(vec![vec![x]]),
    )
}

fn untwisted(spec: &LimitFrameSpec) -> AsymptoticFrame {
    untwist(&canonical_frame(spec), spec).unwrap()
}

fn spec_of(inst: &SncInstance) -> LimitFrameSpec {
    let lim = limit_cohomology(inst, 3).unwrap();
    adapted_basis_for(&lim, inst).unwrap()
}

#[test]
fn untwisted_v_picks_up_z() {
    let x = g(1, 1);
    let spec = jordan_pair(x.clone());
    let frame = untwisted(&spec);
    let v = frame.get("v1").unwrap();
    assert_eq!(
        v[spec.alpha(0)],
        AsymptoticScalar::new(&Poly::z() - &Poly::constant(x), true)
    );
    assert_eq!(v[spec.gamma(0)], AsymptoticScalar::new(Poly::int(1), true));
}

#[test]
fn wedge_of_a_jordan_pair_tracks_im_x() {
    for x in [Gauss::zero(), g(1, 1), g(-3, 2)] {
        let spec = jordan_pair(x.clone());
        let report = ddbar_wedge_verdict(&untwisted(&spec), &spec).unwrap();
        assert_eq!(report.verdict, DdbarVerdict::Holds);
        assert!(!report.determinant.depends_on_x());
        let im = (&(&x - &x.conj()) * &Gauss::ratio(1, 2)) * -Gauss::i();
        let factor = &Poly::y() - &Poly::constant(im);
        assert!(report
            .determinant
            .exact_div(&factor)
            .and_then(|k| k.as_constant())
            .is_some());
    }
}

#[test]
fn wedge_without_nilpotent_part() {
    let b = Matrix::from_rows(vec![
        row(&[g(1, 0), g(0, -1), Gauss::zero(), Gauss::zero()]),
        row(&[Gauss::zero(), Gauss::zero(), g(1, 0), g(0, 1)]),
    ]);
    let spec = toy_clemens(b, 0, 1, Matrix::zeros(0, 0));
    let frame = canonical_frame(&spec);
    assert_eq!(untwist(&frame, &spec).unwrap().vectors, frame.vectors);
    let report = ddbar_wedge_verdict(&frame, &spec).unwrap();
    assert_eq!(report.verdict, DdbarVerdict::Holds);
    assert_eq!(report.kappa.as_deref(), Some("4"));
}

#[test]
fn real_top_vector_fails() {
    let spec = toy_clemens(
        Matrix::from_rows(vec![row(&[g(1, 0), g(1, 0)])]),
        1,
        1,
        Matrix::zeros(1, 1),
    );
    let report = ddbar_wedge_verdict(&untwisted(&spec), &spec).unwrap();
    assert_eq!(report.verdict, DdbarVerdict::Fails);
}

#[test]
fn higher_order_monodromy_is_unsupported() {
    let mut spec = jordan_pair(Gauss::zero());
    spec.n = Matrix::from_fn(4, 4, |r, c| Gauss::int((c == r + 1) as i64));
    assert_eq!(
        untwist(&canonical_frame(&spec), &spec),
        Err(FrameError::UnsupportedOrder)
    );
}

#[test]
fn d_block_grows_like_2yq() {
    let spec = toy_clemens(
        Matrix::from_rows(vec![row(&[g(1, 0), g(0, 1)])]),
        1,
        3,
        Matrix::zeros(1, 1),
    );
    let m = period_matrix(&untwisted(&spec), &spec).unwrap();
    assert_eq!(q_matrix(&spec), Matrix::from_ints(&[[3]]));
    assert_eq!(m.get(0, 0).poly, Poly::y().scale(&Gauss::int(6)));
}

fn polarization_toy(u1: [Gauss; 2]) -> LimitFrameSpec {
    let b = Matrix::from_rows(vec![
        row(&[u1[0].clone(), u1[1].clone(), Gauss::zero(), Gauss::zero()]),
        row(&[Gauss::zero(), Gauss::zero(), g(1, 0), g(0, 1)]),
    ]);
    toy_clemens(b, 1, 1, Matrix::zeros(1, 1))
}

#[test]
fn polarization_with_positive_limit_blocks() {
    let spec = polarization_toy([g(1, 0), g(0, -1)]);
    let frame = untwisted(&spec);
    let outcome = PolarizationOutcome::compute(&frame, &spec).unwrap();
    assert!(outcome.a_infinity_pd && outcome.q_pd);
    assert!(outcome.polarized);
    assert_eq!(outcome.negative_index, 1);
    let blocks = paper_blocks(&frame, &spec).unwrap();
    assert_eq!(blocks.schur_verdict(), Ok(true));
}

#[test]
fn polarization_fails_with_negative_a_infinity() {
    let spec = polarization_toy([g(1, 0), g(0, 1)]);
    assert_eq!(a_infinity(&spec), Matrix::from_ints(&[[-2]]));
    let outcome = PolarizationOutcome::compute(&untwisted(&spec), &spec).unwrap();
    assert!(!outcome.a_infinity_pd);
    assert!(!outcome.polarized);
    assert_eq!(outcome.negative_index, 2);
}

#[test]
fn conifold_frame() {
    let inst = conifold_instance(&ConifoldParams::default()).unwrap();
    let spec = spec_of(&inst);
    assert_eq!(spec.shape, FrameShape::Clemens { h: 1, m: 1 });
    assert!(spec.x.is_zero());
    let frame = untwisted(&spec);
    assert_eq!(
        ddbar_wedge_verdict(&frame, &spec).unwrap().verdict,
        DdbarVerdict::Holds
    );
    let outcome = PolarizationOutcome::compute(&frame, &spec).unwrap();
    assert!(outcome.polarized && outcome.a_infinity_pd && outcome.q_pd);
    let m = period_matrix(&frame, &spec).unwrap();
    let q = q_matrix(&spec);
    let lead = m.get(1, 1).poly.coeff(0, 1);
    assert_eq!(lead, &q[(0, 0)] * &Gauss::int(2));
}

#[test]
fn hashimoto_sano_frame() {
    let spec = spec_of(&hashimoto_sano_instance(1));
    assert_eq!(spec.shape, FrameShape::HashimotoSano { h: 2, m: 17 });
    let frame = untwisted(&spec);
    let w = spec.w.as_ref().unwrap();
    let y = spec.y.as_ref().unwrap();
    let f = frame.get("f").unwrap();
    let expected = &Poly::constant(y[(0, 0)].clone()) + &Poly::z().scale(&w[(0, 0)]);
    assert_eq!(f[spec.epsilon(0)].poly, expected);

    let report = ddbar_wedge_verdict(&frame, &spec).unwrap();
    assert_eq!(report.verdict, DdbarVerdict::Holds);
    assert!(report.w_determinant.is_some());
    let outcome = PolarizationOutcome::compute(&frame, &spec).unwrap();
    assert!(outcome.polarized);
    assert_eq!(outcome.negative_index, 1);
    assert_eq!(
        paper_blocks(&frame, &spec).unwrap().schur_verdict(),
        Ok(true)
    );
}

#[test]
fn coinciding_xi_fails() {
    let mut spec = spec_of(&hashimoto_sano_instance(1));
    let w = spec.w.as_ref().unwrap().clone();
    spec.w = Some(Matrix::from_fn(2, 2, |_, c| {
        w[(0, c)].clone() + w[(0, c)].conj()
    }));
    let report = ddbar_wedge_verdict(&untwisted(&spec), &spec).unwrap();
    assert_eq!(report.verdict, DdbarVerdict::Fails);
}
