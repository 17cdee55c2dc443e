use lmhs::exactlinalg::Matrix;
use lmhs::instances::{ns_gram, K3Model222};
use lmhs::nilpotent::{check_hypothesis_iso, weight_filtration, NilpotentOp};
use lmhs::sample;
use lmhs_testkit::intersection::k3_222_gram;
use lmhs_testkit::jordan::*;
use lmhs_testkit::rank::rank;

#[test]
fn coordinate_weight_filtration_is_unique() {
    for profile in profiles_up_to(4) {
        for center in [0, 3] {
            let j = jordan_matrix(&profile);
            let found = coordinate_weight_filtrations(&j, center);
            assert_eq!(found, vec![jordan_weights(&profile, center)], "{profile:?}");
        }
    }
}

#[test]
fn library_filtration_matches_oracle_in_jordan_basis() {
    for profile in profiles_up_to(5) {
        let n: usize = profile.iter().sum();
        let model = JordanModel::new(&profile, Matrix::identity(n), 1);
        let op = NilpotentOp::new(model.n.clone(), model.center).unwrap();
        let w = weight_filtration(&op);
        assert!(w.filtration.same_as(&model.filtration()), "{profile:?}");
        assert!(check_hypothesis_iso(&op, &model.filtration()).unwrap());
    }
}

#[test]
fn oracle_survives_conjugation() {
    let mut rng = sample::rng(5);
    for profile in profiles_up_to(4) {
        let n: usize = profile.iter().sum();
        let model = JordanModel::new(&profile, sample::invertible(&mut rng, n, 2), 3);
        let op = NilpotentOp::new(model.n.clone(), 3).unwrap();
        assert!(
            check_hypothesis_iso(&op, &model.filtration()).unwrap(),
            "{profile:?}"
        );
        let nilpotency = profile[0] as u32;
        assert!(model.n.pow(nilpotency).is_zero());
        assert_eq!(rank(&model.n), n - profile.len());
    }
}

#[test]
fn k3_gram_from_triple_intersections() {
    let oracle = k3_222_gram();
    assert_eq!(oracle, ns_gram());
    let k3 = K3Model222::default();
    assert_eq!(
        k3.gram().block(k3.ns_offset(), k3.ns_offset(), 3, 3),
        oracle
    );
}
