use lmhs::asymptotics::*;
use lmhs::exactlinalg::{Gauss, Matrix};
use lmhs::sample::{self, SampleRng};
use proptest::prelude::*;
use rand::Rng;

fn y() -> Poly {
    Poly::y()
}

fn scalar(p: Poly, tail: bool) -> AsymptoticScalar {
    AsymptoticScalar::new(p, tail)
}

fn random_scalar(rng: &mut SampleRng) -> AsymptoticScalar {
    let mut p = Poly::zero();
    for _ in 0..rng.gen_range(0..4) {
        let term = Poly::monomial(
            sample::gauss(rng, 3),
            rng.gen_range(0..2),
            rng.gen_range(0..3),
        );
        p = &p + &term;
    }
    scalar(p, rng.gen_bool(0.3))
}

#[test]
fn sign_examples() {
    assert_eq!(
        scalar(Poly::int(1), true).eventual_sign(),
        EventualSign::Positive
    );
    assert_eq!(
        AsymptoticScalar::pure_tail().eventual_sign(),
        EventualSign::Indeterminate
    );
    let two_iy = AsymptoticScalar::exact(y().scale(&Gauss::complex(0, 2)));
    let prod = &two_iy * &two_iy.conj();
    assert_eq!(prod.poly, y().pow(2).scale(&Gauss::int(4)));
    assert_eq!(prod.eventual_sign(), EventualSign::Positive);
    assert_eq!(AsymptoticScalar::zero().eventual_sign(), EventualSign::Zero);
    assert_eq!(
        scalar(&y() - &Poly::int(100), false).eventual_sign(),
        EventualSign::Positive
    );
    assert_eq!(
        scalar(Poly::constant(Gauss::i()), false).eventual_sign(),
        EventualSign::Indeterminate
    );
}

#[test]
fn positive_definite_examples() {
    let two_y = y().scale(&Gauss::int(2));
    let m = AsymptoticMatrix::from_rows(vec![
        vec![
            scalar(two_y, true),
            AsymptoticScalar::constant(Gauss::one()),
        ],
        vec![
            AsymptoticScalar::constant(Gauss::one()),
            AsymptoticScalar::constant(Gauss::int(3)),
        ],
    ])
    .unwrap();
    let m = AsymptoticHermitian::new(m).unwrap();
    let minors = m.leading_principal_minors();
    assert_eq!(minors[1].poly, &y().scale(&Gauss::int(6)) - &Poly::int(1));
    assert!(m.eventually_positive_definite().unwrap());

    let degenerate = AsymptoticMatrix::from_rows(vec![
        vec![AsymptoticScalar::pure_tail(), AsymptoticScalar::zero()],
        vec![
            AsymptoticScalar::zero(),
            AsymptoticScalar::constant(Gauss::one()),
        ],
    ])
    .unwrap();
    let degenerate = AsymptoticHermitian::new(degenerate).unwrap();
    assert!(matches!(
        degenerate.eventually_positive_definite(),
        Err(AsymptoticError::NotDecidable(_))
    ));

    let constant = Matrix::from_ints(&[[2, 1], [1, 2]]);
    assert!(AsymptoticHermitian::constant(&constant)
        .unwrap()
        .eventually_positive_definite()
        .unwrap());
}

#[test]
fn non_hermitian_is_rejected() {
    let m = AsymptoticMatrix::constant(&Matrix::from_ints(&[[1, 2], [3, 1]]));
    assert_eq!(
        AsymptoticHermitian::new(m),
        Err(AsymptoticError::NotHermitian(0, 1))
    );
}

#[test]
fn surviving_x_is_a_consistency_error() {
    let m = AsymptoticMatrix::from_rows(vec![vec![AsymptoticScalar::exact(&Poly::x() + &y())]])
        .unwrap();
    let m = AsymptoticHermitian::new(m).unwrap();
    assert!(matches!(
        m.eventually_positive_definite(),
        Err(AsymptoticError::Consistency(_))
    ));
}

#[test]
fn schur_examples() {
    let a = AsymptoticMatrix::constant(&Matrix::identity(2));
    let two_y = AsymptoticMatrix::from_fn(2, 2, |r, c| {
        if r == c {
            AsymptoticScalar::exact(y().scale(&Gauss::int(2)))
        } else {
            AsymptoticScalar::zero()
        }
    });
    let zero = AsymptoticMatrix::zeros(2, 2);
    assert_eq!(schur_reduce(&a, &zero, &zero, &two_y).unwrap().matrix(), &a);

    let ones = AsymptoticMatrix::constant(&Matrix::from_ints(&[[1, 1], [1, 1]]));
    let reduced = schur_reduce(&a, &ones, &ones.adjoint(), &two_y).unwrap();
    for r in 0..2 {
        for c in 0..2 {
            assert_eq!(reduced.get(r, c).poly, Poly::int((r == c) as i64));
            assert!(reduced.get(r, c).tail);
        }
    }
    assert!(reduced.eventually_positive_definite().unwrap());

    let growing = AsymptoticMatrix::from_fn(2, 2, |_, _| AsymptoticScalar::exact(y()));
    assert!(matches!(
        schur_reduce(&a, &growing, &growing, &two_y),
        Err(AsymptoticError::Growth(_))
    ));
}

#[test]
fn schur_and_minors_agree_on_paper_shaped_matrices() {
    let mut rng = sample::rng(101);
    let mut both = 0;
    for _ in 0..60 {
        let (h, m) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let shaped = paper_shaped(&mut rng, h, m);
        if let (Ok(s), Ok(d)) = (
            shaped.schur_verdict(),
            shaped.assemble().eventually_positive_definite(),
        ) {
            assert_eq!(s, d);
            both += 1;
        }
    }
    assert!(both > 10, "only {both} decidable cases");
}

fn eval_minors_positive(m: &AsymptoticHermitian) -> bool {
    let big = Gauss::int(1_000_000);
    m.eval_poly(&Gauss::zero(), &big)
        .leading_principal_minors()
        .iter()
        .all(|d| d.real_sign() == Some(1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let (a, b, c) = (random_scalar(&mut rng), random_scalar(&mut rng), random_scalar(&mut rng));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
    }

    #[test]
    fn norms_are_never_negative(seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let s = random_scalar(&mut rng);
        prop_assert_ne!((&s * &s.conj()).eventual_sign(), EventualSign::Negative);
    }

    #[test]
    fn minors_agree_with_evaluation(seed in any::<u64>()) {
        let mut rng = sample::rng(seed);
        let n = rng.gen_range(1..=3);
        let c0 = sample::hermitian(&mut rng, n, 3);
        let c1 = Matrix::from_fn(n, n, |r, c| if r == c { Gauss::int(sample::small_int(&mut rng, 2)) } else { Gauss::zero() });
        let m = AsymptoticMatrix::from_fn(n, n, |r, c| {
            AsymptoticScalar::exact(&Poly::constant(c0[(r, c)].clone()) + &y().scale(&c1[(r, c)]))
        });
        let m = AsymptoticHermitian::new(m).unwrap();
        if let Ok(v) = m.eventually_positive_definite() {
            prop_assert_eq!(v, eval_minors_positive(&m));
        }
    }
}
