use std::collections::BTreeMap;
use std::path::PathBuf;

use lmhs::exactlinalg::{Gauss, Matrix};
use lmhs::instances::*;
use lmhs::sample;
use lmhs::steenbrink::{betti, limit_cohomology};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn is_isometry(m: &Matrix, g: &Matrix) -> bool {
    &(&m.transpose() * g) * m == *g
}

#[test]
fn gluing_action_for_a_equal_one() {
    assert_eq!(
        iota_action(1),
        Matrix::from_ints(&[[1, 2, 6], [0, -1, -2], [0, 2, 3]])
    );
    assert_eq!(
        iota_matrix_displayed(1),
        Matrix::from_ints(&[[1, 2, 4], [0, -1, -2], [0, 2, 3]])
    );
}

#[test]
fn gluing_action_is_an_isometry() {
    let g = ns_gram();
    assert_eq!(g.det(), Gauss::int(16));
    for a in 1..=5 {
        assert!(is_isometry(&iota_action(a), &g), "a = {a}");
        assert!(!is_isometry(&iota_matrix_displayed(a), &g), "a = {a}");
    }
}

#[test]
fn hashimoto_sano_second_betti_number() {
    for a in 1..=3u32 {
        assert_eq!(
            betti(&hashimoto_sano_instance(a), 2).unwrap(),
            a as usize + 3
        );
    }
}

fn gr4_dim(params: &ConifoldParams) -> usize {
    let lim = limit_cohomology(&conifold_instance(params).unwrap(), 3).unwrap();
    let dims: BTreeMap<i64, usize> = lim.graded_dims().into_iter().collect();
    dims.get(&4).copied().unwrap_or(0)
}

#[test]
fn conifold_weight_four_counts_relations() {
    let cases = [
        ConifoldParams::default(),
        ConifoldParams {
            curve_classes: vec![vec![1, 0], vec![0, 1], vec![1, 1]],
            relations: vec![vec![1, 1, -1]],
            h21: 2,
        },
        ConifoldParams {
            curve_classes: vec![vec![1], vec![1], vec![1]],
            relations: vec![vec![1, 1, -2]],
            h21: 1,
        },
    ];
    for params in &cases {
        assert_eq!(
            gr4_dim(params),
            params.curves() - params.class_rank(),
            "{params:?}"
        );
    }
}

#[test]
fn conifold_rejects_null_homologous_curve() {
    let params = ConifoldParams {
        curve_classes: vec![vec![0]],
        relations: vec![vec![1]],
        h21: 1,
    };
    assert!(matches!(
        conifold_instance(&params),
        Err(InstanceError::FriedmanConditionFailure(_))
    ));
    let params = ConifoldParams {
        curve_classes: vec![vec![1], vec![1]],
        relations: vec![vec![1, 1]],
        h21: 1,
    };
    assert!(matches!(
        conifold_instance(&params),
        Err(InstanceError::FriedmanConditionFailure(_))
    ));
}

#[test]
fn built_ins_validate() {
    let mut rng = sample::rng(7);
    let instances = [
        hashimoto_sano_instance(1),
        hashimoto_sano_instance(2),
        conifold_instance(&ConifoldParams::default()).unwrap(),
        two_quadrics(),
        random_snc(&mut rng, SncFamily::Double),
        random_snc(&mut rng, SncFamily::Triple),
    ];
    for inst in &instances {
        let report = validate_instance(inst);
        assert!(report.is_valid(), "{}: {:?}", report.name, report.issues);
    }
}

#[test]
fn round_trip_through_json() {
    let inst = hashimoto_sano_instance(2);
    let dir = std::env::temp_dir().join(format!("lmhs-roundtrip-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("hs2.json");
    save_instance(&inst, &path).unwrap();
    assert_eq!(load_instance(&path).unwrap(), inst);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn fixtures() {
    let toy = load_instance(&fixture("two_quadrics.json")).unwrap();
    assert!(validate_instance(&toy).is_valid());
    let bad = load_instance(&fixture("asymmetric_gram.json"));
    assert!(matches!(bad, Err(InstanceError::Schema(_))), "{bad:?}");
}

#[test]
fn malformed_json_is_a_parse_error() {
    assert!(matches!(
        parse_instance("{ not json"),
        Err(InstanceError::Parse(_))
    ));
    let missing = load_instance(&fixture("does_not_exist.json"));
    assert!(matches!(missing, Err(InstanceError::Io { .. })));
}
