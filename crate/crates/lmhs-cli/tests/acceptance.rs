//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;

use lmhs::asymptotics::{paper_shaped, Poly};
use lmhs::exactlinalg::{Gauss, Matrix};
use lmhs::instances::{
    conifold_instance, hashimoto_sano_instance, ns_gram, random_snc, ConifoldParams, SncFamily,
};
use lmhs::mhs::deligne_splitting;
use lmhs::nilpotent::{check_hypothesis_iso, weight_filtration, NilpotentOp};
use lmhs::period::{
    classify_distance, metric_asymptote, potential_asymptote, DistanceClass, PeriodGerm,
};
use lmhs::sample;
use lmhs::steenbrink::{
    betti, gr3_polarization_verdict, graded_monodromy, limit_cohomology, pairing_well_defined,
    WeightComplex,
};
use lmhs_cli::{cmd_ddbar, cmd_polarization};
use lmhs_testkit::intersection::k3_222_gram;
use lmhs_testkit::jordan::{profiles_up_to, JordanModel};
use lmhs_testkit::rank::{is_bijective, rank};
use lmhs_testkit::splitting::splitting_failures;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Check {
    let t = start.elapsed();
    ensure(t <= limit, || {
        format!("{what} took {t:?}, budget {limit:?}")
    })
}

fn hashimoto_sano_b2() -> Check {
    for a in 1..=3u32 {
        let start = Instant::now();
        let b2 = betti(&hashimoto_sano_instance(a), 2).map_err(|e| e.to_string())?;
        ensure(b2 == a as usize + 3, || format!("a = {a}: b2 = {b2}"))?;
        within(start, Duration::from_secs(5), &format!("a = {a}"))?;
    }
    Ok(())
}

fn hashimoto_sano_n_iso() -> Check {
    let start = Instant::now();
    let inst = hashimoto_sano_instance(1);
    let c = WeightComplex::new(&inst, 3, 4).map_err(|e| e.to_string())?;
    let gr4 = c.mid.dim - rank(&c.b) - rank(&c.a);
    ensure(gr4 == 19, || format!("rank oracle gives dim Gr_4 = {gr4}"))?;
    let n = graded_monodromy(&inst, 3, 4).map_err(|e| e.to_string())?;
    ensure(n.cols() == 19 && is_bijective(&n), || {
        format!(
            "N: Gr_4 → Gr_2 is {}×{} of rank {}",
            n.rows(),
            n.cols(),
            rank(&n)
        )
    })?;
    within(start, Duration::from_secs(5), "N-isomorphism")
}

fn hashimoto_sano_verdicts() -> Check {
    let start = Instant::now();
    let ddbar = cmd_ddbar("builtin:hashimoto-sano?a=1").map_err(|e| e.to_string())?;
    ensure(
        ddbar.code == 0 && ddbar.stdout.starts_with("ddbar = holds\n"),
        || ddbar.stdout.clone(),
    )?;
    let pol = cmd_polarization("builtin:hashimoto-sano?a=1").map_err(|e| e.to_string())?;
    ensure(
        pol.code == 0 && pol.stdout.starts_with("polarized = true\n"),
        || pol.stdout.clone(),
    )?;
    within(start, Duration::from_secs(30), "verdicts")
}

fn cup_map_nondegenerate() -> Check {
    let oracle = k3_222_gram();
    let expected = Matrix::from_ints(&[[0, 2, 2], [2, 0, 2], [2, 2, 0]]);
    ensure(oracle == expected, || format!("oracle gives {oracle}"))?;
    ensure(oracle.det() == Gauss::int(16), || {
        format!("det {}", oracle.det())
    })?;
    ensure(ns_gram() == oracle, || {
        format!("library ns Gram {}", ns_gram())
    })?;
    let inst = hashimoto_sano_instance(1);
    let r = inst
        .restrictions
        .iter()
        .find(|r| r.from == "X2" && r.to == "S" && r.degree == 2)
        .ok_or("no restriction X2 → S")?;
    let s = inst.piece("S").ok_or("no piece S")?.degree(2).gram.coeffs;
    let pulled = &(&r.matrix.transpose() * &s) * &r.matrix;
    ensure(pulled == oracle, || format!("instance pulls back {pulled}"))
}

fn conifold_classification() -> Check {
    let cases = [
        ConifoldParams::default(),
        ConifoldParams {
            h21: 3,
            ..ConifoldParams::default()
        },
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
        let start = Instant::now();
        let inst = conifold_instance(params).map_err(|e| e.to_string())?;
        let lim = limit_cohomology(&inst, 3).map_err(|e| e.to_string())?;
        let germ = PeriodGerm::from_limit(&lim, &inst).map_err(|e| e.to_string())?;
        let d = germ.distance_index().map_err(|e| e.to_string())?;
        let pol = gr3_polarization_verdict(&inst).map_err(|e| e.to_string())?;
        let class = classify_distance(&germ, Some(pol)).map_err(|e| e.to_string())?;
        ensure(d == 0 && pol && class == DistanceClass::Finite, || {
            format!("{}: d = {d}, polarized = {pol}, {class:?}", inst.name)
        })?;
        within(start, Duration::from_secs(5), &inst.name)?;
    }
    Ok(())
}

fn infinite_distance_law() -> Check {
    for d in 1..=3usize {
        let germ = PeriodGerm::jordan(d);
        let p = potential_asymptote(&germ).map_err(|e| e.to_string())?;
        ensure(p.poly.y_degree() == Some(d as i32), || {
            format!("d = {d}: potential {p}")
        })?;
        let g = metric_asymptote(&germ).map_err(|e| e.to_string())?;
        let expected = Poly::monomial(Gauss::int(d as i64), 0, -2);
        ensure(g.poly == expected && g.tail, || {
            format!("d = {d}: metric {g}")
        })?;
        let class = classify_distance(&germ, None).map_err(|e| e.to_string())?;
        ensure(class == DistanceClass::Infinite, || {
            format!("d = {d}: {class:?}")
        })?;
    }
    Ok(())
}

fn deligne_splitting_suite() -> Check {
    let start = Instant::now();
    let mut rng = sample::rng(2024);
    for k in 0..200 {
        let m = sample::random_mhs(&mut rng, 6);
        let split = deligne_splitting(&m).map_err(|e| format!("sample {k}: {e}"))?;
        let failures = splitting_failures(&m, &split);
        ensure(failures.is_empty(), || format!("sample {k}: {failures:?}"))?;
    }
    within(start, Duration::from_secs(60), "200 splittings")
}

fn weight_filtration_oracle() -> Check {
    let mut rng = sample::rng(8);
    for profile in profiles_up_to(6) {
        let n: usize = profile.iter().sum();
        for basis in [Matrix::identity(n), sample::invertible(&mut rng, n, 2)] {
            let center = rng.gen_range(0..=4);
            let model = JordanModel::new(&profile, basis, center);
            let op = NilpotentOp::new(model.n.clone(), center).map_err(|e| e.to_string())?;
            let w = weight_filtration(&op).filtration;
            ensure(w.same_as(&model.filtration()), || {
                format!("{profile:?}: filtration differs from the oracle")
            })?;
            let iso = check_hypothesis_iso(&op, &w).map_err(|e| e.to_string())?;
            ensure(iso, || format!("{profile:?}: hypothesis check fails"))?;
        }
    }
    Ok(())
}

fn pairing_well_definedness() -> Check {
    let mut rng = sample::rng(99);
    let mut evaluations = 0;
    for k in 0..50 {
        let family = if k % 2 == 0 {
            SncFamily::Double
        } else {
            SncFamily::Triple
        };
        let inst = random_snc(&mut rng, family);
        for check in pairing_well_defined(&inst).map_err(|e| format!("instance {k}: {e}"))? {
            evaluations += check.evaluations;
            ensure(check.passed(), || {
                format!(
                    "instance {k}: {} nonzero on {} evaluations of {}",
                    check.nonzero, check.evaluations, check.pairing
                )
            })?;
        }
    }
    ensure(evaluations > 0, || {
        "no coboundary pairs were evaluated".into()
    })
}

fn schur_minor_agreement() -> Check {
    let mut rng = sample::rng(10);
    let mut decided = 0;
    for k in 0..50 {
        let (h, m) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let shaped = paper_shaped(&mut rng, h, m);
        if let (Ok(schur), Ok(direct)) = (
            shaped.schur_verdict(),
            shaped.assemble().eventually_positive_definite(),
        ) {
            decided += 1;
            ensure(schur == direct, || {
                format!("sample {k}: Schur {schur}, minors {direct}")
            })?;
        }
    }
    ensure(decided > 0, || "no sample was decidable both ways".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("Hashimoto-Sano b2 = a+3", hashimoto_sano_b2),
        (
            "Hashimoto-Sano N: Gr4 -> Gr2 bijective, dim Gr4 = 19",
            hashimoto_sano_n_iso,
        ),
        (
            "Hashimoto-Sano ddbar holds and polarized",
            hashimoto_sano_verdicts,
        ),
        (
            "cup with 2h1+2h2+2h3 on (P1)^3 has det 16",
            cup_map_nondegenerate,
        ),
        (
            "conifold d = 0, finite, Gr3 polarized",
            conifold_classification,
        ),
        (
            "Jordan germs: degree d, metric d/y^2 + h, infinite",
            infinite_distance_law,
        ),
        (
            "Deligne splitting on 200 random MHS",
            deligne_splitting_suite,
        ),
        (
            "weight filtration equals the Jordan oracle",
            weight_filtration_oracle,
        ),
        (
            "pairings vanish on coboundaries of 50 SNC instances",
            pairing_well_definedness,
        ),
        (
            "Schur and minor verdicts agree on 50 samples",
            schur_minor_agreement,
        ),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let elapsed = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("criterion {:>2} PASS {name} ({elapsed:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name} ({elapsed:.2}s): {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
