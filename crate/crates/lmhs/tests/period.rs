use lmhs::asymptotics::{EventualSign, Poly};
use lmhs::exactlinalg::{Gauss, Matrix};
use lmhs::instances::{conifold_instance, hashimoto_sano_instance, ConifoldParams};
use lmhs::nilpotent::NilpotentOp;
use lmhs::period::*;
use lmhs::steenbrink::limit_cohomology;

#[test]
fn jordan_potentials() {
    let expected = [(1, 1, 0), (2, 1, 1), (2, 1, 2), (4, 3, 3)];
    for (d, (num, den, deg)) in expected.into_iter().enumerate() {
        let g = PeriodGerm::jordan(d);
        assert_eq!(g.distance_index().unwrap(), d);
        let p = potential_asymptote(&g).unwrap();
        assert_eq!(p.poly, Poly::monomial(Gauss::ratio(num, den), 0, deg));
        assert!(p.tail);
        assert_eq!(potential_sign(&g).unwrap(), EventualSign::Positive);
    }
}

#[test]
fn jordan_metrics() {
    for d in 1..=3 {
        let g = PeriodGerm::jordan(d);
        let metric = metric_asymptote(&g).unwrap();
        assert_eq!(metric.poly, Poly::monomial(Gauss::int(d as i64), 0, -2));
        assert_eq!(
            classify_distance(&g, Some(true)).unwrap(),
            DistanceClass::Infinite
        );
        let report = distance_report(&g, None).unwrap();
        assert_eq!(report.witness.bound, LengthBound::DivergentLower);
    }
    let g = PeriodGerm::jordan(0);
    assert!(metric_asymptote(&g).unwrap().poly.is_zero());
    assert_eq!(
        classify_distance(&g, Some(true)).unwrap(),
        DistanceClass::Finite
    );
    assert_eq!(
        classify_distance(&g, None).unwrap(),
        DistanceClass::FiniteConditional
    );
    assert_eq!(
        classify_distance(&g, Some(false)).unwrap(),
        DistanceClass::FiniteConditional
    );
}

#[test]
fn leading_coefficient_identity() {
    for d in 0..=4 {
        let g = PeriodGerm::jordan(d);
        let nd = g.n.matrix().pow(d as u32).mul_vec(&g.a0_bar());
        let paired = g.pair(&g.a0, &nd);
        let factorial: i64 = (1..=d as i64).product();
        let sign = Gauss::int(if d % 2 == 0 { 1 } else { -1 });
        let factor = &(&sign * &Gauss::complex(0, 2).pow(d as u32)) * &Gauss::ratio(1, factorial);
        assert_eq!(g.coefficient(d), &factor * &paired);
    }
}

#[test]
fn non_isometry_is_rejected() {
    let n = NilpotentOp::new(Matrix::from_ints(&[[0, 1], [0, 0]]), 1).unwrap();
    let gram = Matrix::identity(2);
    let err = PeriodGerm::new(
        vec![Gauss::zero(), Gauss::one()],
        n,
        gram,
        Matrix::identity(2),
    );
    assert_eq!(err, Err(PeriodError::NotIsometry));
}

#[test]
fn degenerate_gram() {
    let n = NilpotentOp::new(Matrix::from_ints(&[[0, 1], [0, 0]]), 1).unwrap();
    let gram = Matrix::from_ints(&[[0, 0], [0, 1]]);
    let g = PeriodGerm::new(
        vec![Gauss::zero(), Gauss::one()],
        n,
        gram,
        Matrix::identity(2),
    )
    .unwrap();
    assert_eq!(
        potential_asymptote(&g),
        Err(PeriodError::GramDegenerate { d: 1 })
    );
}

#[test]
fn built_in_degenerations() {
    let inst = hashimoto_sano_instance(1);
    let lim = limit_cohomology(&inst, 3).unwrap();
    let g = PeriodGerm::from_limit(&lim, &inst).unwrap();
    assert_eq!(g.distance_index().unwrap(), 1);
    assert_eq!(
        classify_distance(&g, Some(true)).unwrap(),
        DistanceClass::Infinite
    );
    assert_eq!(potential_sign(&g).unwrap(), EventualSign::Positive);

    let inst = conifold_instance(&ConifoldParams::default()).unwrap();
    let lim = limit_cohomology(&inst, 3).unwrap();
    let g = PeriodGerm::from_limit(&lim, &inst).unwrap();
    assert_eq!(g.distance_index().unwrap(), 0);
    assert_eq!(
        classify_distance(&g, Some(true)).unwrap(),
        DistanceClass::Finite
    );
    assert_eq!(
        potential_asymptote(&g)
            .unwrap()
            .poly
            .as_constant()
            .and_then(|c| c.real_sign()),
        Some(1)
    );
}
