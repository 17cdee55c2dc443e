use std::collections::BTreeMap;

use lmhs::exactlinalg::{Gauss, Matrix, Subspace};
use lmhs::instances::{
    conifold_instance, hashimoto_sano_instance, random_snc, ConifoldParams, SncFamily,
};
use lmhs::sample;
use lmhs::steenbrink::*;

fn point(p: i32) -> DegreeData {
    DegreeData::from_types(&[(p, p)], Matrix::identity(1), Matrix::identity(1))
}

fn restriction(from: &str, to: &str, degree: u32, matrix: Matrix) -> Restriction {
    Restriction {
        from: from.into(),
        to: to.into(),
        degree,
        matrix,
    }
}

/// The `X1` component of the a = 1 model on its own, as a smooth family.
fn smooth_threefold() -> SncInstance {
    let hs = hashimoto_sano_instance(1);
    let x1 = hs.piece("X1").unwrap().clone();
    SncInstance {
        name: "smooth".into(),
        fiber_dim: 3,
        strata: vec![Stratum {
            depth: 1,
            pieces: vec![x1],
        }],
        restrictions: vec![],
        kahler: None,
        a0: None,
        frame: None,
    }
}

/// Three components with only `H⁰` and `H⁶`, pairwise surfaces with a
/// hyperbolic `H²`, and a triple rational curve of self-intersection zero on
/// each surface. Only the weight-4 complex of `H³` is consistent.
fn triple_surface_chain() -> SncInstance {
    let names = ["P0", "P1", "P2"];
    let threefold = |i: usize| Piece {
        id: names[i].into(),
        components: vec![i],
        cohomology: [(0, point(0)), (6, point(3))].into_iter().collect(),
    };
    let mut surfaces = Vec::new();
    let mut restrictions = Vec::new();
    let mut kahler = KahlerData::new();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let id = format!("S{i}{j}");
        let h2 = DegreeData::from_types(
            &[(1, 1), (1, 1)],
            Matrix::identity(2),
            Matrix::diagonal(&[Gauss::one(), -Gauss::one()]),
        );
        surfaces.push(Piece {
            id: id.clone(),
            components: vec![i, j],
            cohomology: [(0, point(0)), (2, h2), (4, point(2))]
                .into_iter()
                .collect(),
        });
        restrictions.push(restriction(names[i], &id, 0, Matrix::identity(1)));
        restrictions.push(restriction(names[j], &id, 0, Matrix::identity(1)));
        restrictions.push(restriction(&id, "C", 0, Matrix::identity(1)));
        restrictions.push(restriction(&id, "C", 2, Matrix::from_ints(&[[1, 1]])));
        kahler.insert(
            id,
            [
                (0, Matrix::from_ints(&[[1], [0]])),
                (2, Matrix::from_ints(&[[1, 0]])),
            ]
            .into_iter()
            .collect(),
        );
    }
    let curve = Piece {
        id: "C".into(),
        components: vec![0, 1, 2],
        cohomology: [(0, point(0)), (2, point(1))].into_iter().collect(),
    };
    SncInstance {
        name: "triple-surface-chain".into(),
        fiber_dim: 3,
        strata: vec![
            Stratum {
                depth: 1,
                pieces: (0..3).map(threefold).collect(),
            },
            Stratum {
                depth: 2,
                pieces: surfaces,
            },
            Stratum {
                depth: 3,
                pieces: vec![curve],
            },
        ],
        restrictions,
        kahler: Some(kahler),
        a0: None,
        frame: None,
    }
}

#[test]
fn smooth_family_has_pure_limit() {
    let inst = smooth_threefold();
    assert!(validate(&inst).is_empty());
    for m in 0..=6 {
        let lim = limit_cohomology(&inst, m).unwrap();
        let expected = inst.piece("X1").unwrap().rank(m);
        let dims = lim.graded_dims();
        assert_eq!(lim.dim(), expected, "H^{m}");
        assert!(
            dims.iter().all(|(&w, &d)| d == 0 || w == m),
            "H^{m}: {dims:?}"
        );
        assert!(lim.monodromy.matrix().is_zero());
    }
}

#[test]
fn gysin_is_negative_adjoint_of_restriction() {
    let inst = hashimoto_sano_instance(2);
    for d in 0..=2 {
        let phi = gysin_map(&inst, 1, d).unwrap();
        let dual = inst.top_degree(1) - d - 2;
        let psi = restriction_map(&inst, 1, dual);
        let g_low = stratum_gram(&inst, 1, d + 2).unwrap();
        let g_high = stratum_gram(&inst, 2, d).unwrap();
        assert_eq!(&phi.transpose() * &g_low, -&(&g_high * &psi), "degree {d}");
    }
}

#[test]
fn d1_squares_to_zero_on_builtins() {
    for inst in [
        hashimoto_sano_instance(1),
        conifold_instance(&ConifoldParams::default()).unwrap(),
    ] {
        for m in 0..=6 {
            for r in -3..=3 {
                let first = d1(&inst, m, r).unwrap();
                let second = d1(&inst, m + 1, r - 1).unwrap();
                assert!((&second * &first).is_zero(), "{} m={m} r={r}", inst.name);
            }
        }
    }
}

#[test]
fn conifold_weight_four_sequence_shape() {
    let params = ConifoldParams::default();
    let inst = conifold_instance(&params).unwrap();
    let page = e1_page(&inst, 3).unwrap();
    let c = page.complex(4).unwrap();
    let (r, rho) = (params.curves(), params.picard());
    assert_eq!(c.prev.dim, 0);
    assert_eq!(c.mid.dim, 2 * r);
    assert_eq!(c.mid.summands.len(), 1);
    assert_eq!(c.mid.summands[0].depth, 2);
    assert_eq!(c.next.dim, (rho + r) + r);
    assert_eq!(c.next.summands[0].depth, 1);
    assert_eq!(c.next.summands[0].degree, 4);
}

#[test]
fn hashimoto_sano_graded_dims() {
    let lim = limit_cohomology(&hashimoto_sano_instance(1), 3).unwrap();
    let dims: BTreeMap<i64, usize> = lim
        .graded_dims()
        .into_iter()
        .filter(|(_, d)| *d > 0)
        .collect();
    assert_eq!(dims, [(2, 19), (3, 4), (4, 19)].into_iter().collect());
    assert!(lim.n_iso().unwrap());
    let top = top_hodge_vector(&lim, 3).expect("one-dimensional F^3");
    assert_eq!(top.iter().filter(|x| !x.is_zero()).count(), 1);
}

#[test]
fn graded_pieces_respect_types() {
    let inst = hashimoto_sano_instance(1);
    let gr4 = graded_piece(&inst, 3, 4).unwrap();
    let count = |t| gr4.types.iter().filter(|&&x| x == t).count();
    assert_eq!((count((3, 1)), count((2, 2)), count((1, 3))), (1, 17, 1));
    let gr3 = graded_piece(&inst, 3, 3).unwrap();
    assert!(gr3.types.iter().all(|&t| t == (2, 1) || t == (1, 2)));
}

#[test]
fn pairings_vanish_on_coboundaries_of_random_instances() {
    let mut rng = sample::rng(11);
    for k in 0..6 {
        let family = if k % 2 == 0 {
            SncFamily::Double
        } else {
            SncFamily::Triple
        };
        let inst = random_snc(&mut rng, family);
        for check in pairing_well_defined(&inst).unwrap() {
            assert!(check.passed(), "{family:?}: {check:?}");
        }
    }
}

#[test]
fn pairings_reject_non_cocycles() {
    let inst = hashimoto_sano_instance(1);
    let p = Pairings::new(&inst).unwrap();
    let mid = p.gr3.complex.mid.dim;
    let bad = (0..mid)
        .map(|j| {
            (0..mid)
                .map(|i| Gauss::int((i == j) as i64))
                .collect::<Vec<_>>()
        })
        .find(|v| !p.gr3.is_cocycle(v));
    if let Some(v) = bad {
        assert!(matches!(
            p.gr33(&inst, &v, &v),
            Err(SteenbrinkError::NotACocycle { w: 3 })
        ));
    }
}

#[test]
fn primitive_modification_shifts_by_coboundary() {
    let inst = triple_surface_chain();
    let piece = graded_piece(&inst, 3, 4).unwrap();
    assert_eq!(piece.complex.prev.dim, 1);
    let lefschetz = Matrix::block_diagonal(&vec![Matrix::from_ints(&[[1, 0]]); 3]);
    let coboundary = piece.complex.a.column(0);
    assert!(!lefschetz.mul_vec(&coboundary).iter().all(Gauss::is_zero));

    let primitive = Subspace::kernel(&piece.complex.b.vstack(&lefschetz));
    assert!(primitive.dim() > 0);
    let p = primitive.vectors().remove(0);
    let rep: Vec<Gauss> = p.iter().zip(&coboundary).map(|(x, y)| x + y).collect();
    let fixed = primitive_modify(&inst, &piece, &rep).unwrap();
    assert!(lefschetz.mul_vec(&fixed).iter().all(Gauss::is_zero));
    let shift: Vec<Gauss> = fixed.iter().zip(&rep).map(|(x, y)| x - y).collect();
    assert!(piece.image.contains(&shift));
}

#[test]
fn primitive_modification_fails_outside_reach() {
    let inst = triple_surface_chain();
    let piece = graded_piece(&inst, 3, 4).unwrap();
    let lefschetz = Matrix::block_diagonal(&vec![Matrix::from_ints(&[[1, 0]]); 3]);
    let reach = Subspace::image(&(&lefschetz * &piece.complex.a));
    let stuck = piece
        .kernel
        .vectors()
        .into_iter()
        .find(|v| !reach.contains(&lefschetz.mul_vec(v)))
        .expect("a cocycle with unreachable Lefschetz image");
    assert!(matches!(
        primitive_modify(&inst, &piece, &stuck),
        Err(SteenbrinkError::HypothesisFailure(_))
    ));
}

#[test]
fn flipped_middle_gram_breaks_polarization() {
    let mut inst = conifold_instance(&ConifoldParams::default()).unwrap();
    assert!(gr3_polarization_verdict(&inst).unwrap());
    let y = inst.strata[0]
        .pieces
        .iter_mut()
        .find(|p| p.id == "Y")
        .unwrap();
    let h3 = y.cohomology.get_mut(&3).unwrap();
    let g = &mut h3.gram.coeffs;
    for (r, c) in [(1, 2), (2, 1)] {
        g[(r, c)] = -g[(r, c)].clone();
    }
    assert!(validate(&inst).is_empty());
    assert!(!gr3_polarization_verdict(&inst).unwrap());
}

#[test]
fn missing_kahler_data_is_a_hypothesis_failure() {
    let mut inst = hashimoto_sano_instance(1);
    inst.kahler = None;
    assert!(matches!(
        gr4_positivity(&inst),
        Err(SteenbrinkError::HypothesisFailure(_))
    ));
}

#[test]
fn betti_numbers_of_hashimoto_sano() {
    for a in 1..=3u32 {
        assert_eq!(
            betti(&hashimoto_sano_instance(a), 2).unwrap(),
            a as usize + 3
        );
    }
}
