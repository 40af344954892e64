use geam_core::bounds::*;
use geam_core::catalog::{
    catalog, conical_qubit_geam, mub_bases, mum_efficiency, mums_from_mubs, pauli_mub_design,
    two_povm_qubit_geam,
};
use geam_core::diagrams::entropy_minorant;
use geam_core::linalg::{bloch_to_density, BlochVector, DensityMatrix};
use geam_core::measurements::{conical_design_params, to_povms};
use geam_core::sampling::{random_state_mixed_rank, rng_from_seed};

const ALPHAS: [f64; 6] = [0.3, 0.5, 0.8, 1.0, 1.5, 2.0];

fn pure(x: f64, y: f64, z: f64) -> DensityMatrix {
    bloch_to_density(BlochVector::new(x, y, z)).unwrap()
}

#[test]
fn two_povm_pure_state_deviations() {
    let set = to_povms(&two_povm_qubit_geam()).unwrap();
    let z = avg_tsallis(&set, &pure(0.0, 0.0, 1.0), 0.8).unwrap();
    let x = avg_tsallis(&set, &pure(1.0, 0.0, 0.0), 0.8).unwrap();
    // Independent scalar oracle.
    assert!((z.lhs - 0.9214910235581896).abs() < 1e-12);
    assert!((z.rhs - 0.7434917749851744).abs() < 1e-12);
    assert!((z.relative_deviation() - 0.19316438687129006).abs() < 1e-12);
    assert!((x.lhs - 0.8697786800521115).abs() < 1e-12);
    assert!((x.relative_deviation() - 0.1451942982315579).abs() < 1e-12);
    let mixed = avg_tsallis(&set, &DensityMatrix::maximally_mixed(2), 0.8).unwrap();
    assert!(mixed.slack().abs() <= 1e-12);
}

#[test]
fn conical_pure_state_deviations() {
    let m = conical_qubit_geam();
    let rho = pure(0.0, 0.0, 1.0);
    let t = conical_tsallis(&m, &rho, 0.8).unwrap();
    let r = conical_renyi(&m, &rho, 0.8).unwrap();
    assert!((t.lhs - 1.731110706446341).abs() < 1e-12);
    assert!((t.rhs - 1.5739830432940476).abs() < 1e-12);
    assert!((t.relative_deviation() - 0.09076696398859907).abs() < 1e-12);
    assert!((r.lhs - 1.4865112785510015).abs() < 1e-12);
    assert!((r.rhs - 1.3684099172280901).abs() < 1e-12);
    assert!((r.relative_deviation() - 0.07944868163935655).abs() < 1e-12);
    // At the rounded IC the minorant is 1.5739811 (oracle).
    assert!((entropy_minorant(0.255322, 0.8).unwrap() - 1.5739810914344978).abs() < 1e-12);
}

#[test]
fn averaged_bound_never_exceeded() {
    let mut rng = rng_from_seed(2024);
    for entry in catalog() {
        let set = entry.measurement.as_symmetric().unwrap();
        for _ in 0..300 {
            let rho = random_state_mixed_rank(&mut rng, set.dim()).unwrap();
            let lhs = averaged_ic(&set, &rho).unwrap();
            let rhs = averaged_ic_bound(set.params(), rho.purity(), set.dim()).unwrap();
            assert!(lhs - rhs <= 1e-10, "{}: {}", entry.id, lhs - rhs);
        }
    }
}

#[test]
fn every_applicable_relation_holds() {
    let mut rng = rng_from_seed(99);
    let mut evaluated = 0usize;
    for entry in catalog() {
        let m = entry.measurement.as_equiangular().unwrap();
        for _ in 0..150 {
            let rho = random_state_mixed_rank(&mut rng, m.dim()).unwrap();
            let report = evaluate_report(&m, &rho, &ALPHAS).unwrap();
            for b in report.bounds.iter().filter(|b| b.applicable) {
                assert!(
                    b.slack.unwrap() >= -1e-10,
                    "{} {:?} {:?}: {:?}",
                    entry.id,
                    b.relation,
                    b.alpha,
                    b.slack
                );
                evaluated += 1;
            }
        }
    }
    assert!(evaluated > 10_000);
}

#[test]
fn state_independent_forms_are_purity_one() {
    let mut rng = rng_from_seed(3);
    for entry in catalog() {
        let m = entry.measurement.as_equiangular().unwrap();
        let set = to_povms(&m).unwrap();
        let d = m.dim();
        let rho = random_state_mixed_rank(&mut rng, d).unwrap();
        let report = evaluate_report(&m, &rho, &ALPHAS).unwrap();
        for b in &report.bounds {
            let Some(si) = b.rhs_state_independent else {
                continue;
            };
            let direct = match (b.relation, b.alpha) {
                (Relation::AveragedIndexOfCoincidence, None) => {
                    averaged_ic_bound(set.params(), 1.0, d)
                }
                (Relation::AveragedTsallis, Some(a)) => avg_tsallis_rhs(set.params(), d, 1.0, a),
                (Relation::AveragedRenyi, Some(a)) => avg_renyi_rhs(set.params(), d, 1.0, a),
                (Relation::AveragedMaxProbability, None) => {
                    avg_max_prob(&set, &rho, Some(1.0)).map(|b| b.rhs)
                }
                (Relation::AveragedPairSum, None) => {
                    avg_pair_sum(&set, &rho, Some(1.0)).map(|b| b.rhs)
                }
                (Relation::ConicalTsallis, Some(a)) => {
                    conical_tsallis_rhs(&conical_design_params(&m).unwrap(), d, 1.0, a)
                }
                (Relation::ConicalRenyi, Some(a)) => {
                    conical_renyi_rhs(&conical_design_params(&m).unwrap(), d, 1.0, a)
                }
                (Relation::ConicalMaxProbabilityUpper, None) => {
                    conical_max_prob(&m, &rho, Some(1.0)).map(|t| t.upper)
                }
                (Relation::ConicalPairSum, None) => {
                    conical_pair_sum(&m, &rho, Some(1.0)).map(|b| b.rhs)
                }
                other => panic!("unexpected state-independent entry {other:?}"),
            };
            assert_eq!(direct.unwrap(), si);
            // A pure state has purity one, so its state-dependent value agrees.
        }
        let pure_rho =
            DensityMatrix::pure(&geam_core::sampling::random_pure_vector(&mut rng, d)).unwrap();
        let report = evaluate_report(&m, &pure_rho, &ALPHAS).unwrap();
        for b in report
            .bounds
            .iter()
            .filter(|b| b.rhs_state_independent.is_some())
        {
            assert!((b.rhs.unwrap() - b.rhs_state_independent.unwrap()).abs() < 1e-10);
        }
    }
}

#[test]
fn shannon_forms_coincide() {
    let mut rng = rng_from_seed(8);
    for entry in catalog() {
        let m = entry.measurement.as_equiangular().unwrap();
        let set = to_povms(&m).unwrap();
        let rho = random_state_mixed_rank(&mut rng, m.dim()).unwrap();
        let t = avg_tsallis(&set, &rho, 1.0).unwrap();
        let r = avg_renyi(&set, &rho, 1.0).unwrap();
        assert!((t.lhs - r.lhs).abs() < 1e-12 && (t.rhs - r.rhs).abs() < 1e-12);
        if conical_design_params(&m).is_ok() {
            let t = conical_tsallis(&m, &rho, 1.0).unwrap();
            let r = conical_renyi(&m, &rho, 1.0).unwrap();
            assert!((t.lhs - r.lhs).abs() < 1e-12 && (t.rhs - r.rhs).abs() < 1e-12);
            // Collision entropy of a conical design is fixed by the purity.
            let r2 = conical_renyi(&m, &rho, 2.0).unwrap();
            assert!(r2.slack().abs() < 1e-10);
        }
    }
}

#[test]
fn saturation_for_maximally_mixed_qubit() {
    let m = pauli_mub_design();
    let rho = DensityMatrix::maximally_mixed(2);
    let report = evaluate_report(&m, &rho, &ALPHAS).unwrap();
    let applicable: Vec<_> = report.bounds.iter().filter(|b| b.applicable).collect();
    assert!(applicable.len() >= 20);
    for b in applicable {
        assert!(
            b.slack.unwrap().abs() <= 1e-10,
            "{:?} {:?}: {:?}",
            b.relation,
            b.alpha,
            b.slack
        );
    }
    let t = conical_tsallis(&m, &rho, 1.0).unwrap();
    assert!((t.lhs - 6f64.ln()).abs() < 1e-12 && (t.rhs - 6f64.ln()).abs() < 1e-12);
    let set = to_povms(&m).unwrap();
    let r = avg_renyi(&set, &rho, 2.0).unwrap();
    assert!((r.lhs - 2f64.ln()).abs() < 1e-12 && (r.rhs - 2f64.ln()).abs() < 1e-12);
}

#[test]
fn report_applicability() {
    let rho = pure(0.0, 0.0, 1.0);
    let report = evaluate_report(&conical_qubit_geam(), &rho, &[0.8]).unwrap();
    for rel in [
        Relation::AveragedTsallis,
        Relation::ConicalTsallis,
        Relation::ConicalRenyi,
    ] {
        assert!(report.entry(rel, Some(0.8)).unwrap().applicable);
    }
    for rel in [
        Relation::ConicalMaxProbabilityLower,
        Relation::ConicalMaxProbabilityUpper,
        Relation::ConicalPairSum,
        Relation::AveragedIndexOfCoincidence,
    ] {
        assert!(report.entry(rel, None).unwrap().applicable);
    }
    assert!(
        !report
            .entry(Relation::AveragedRenyi, Some(0.8))
            .unwrap()
            .applicable
    );
    let upper = report
        .entry(Relation::ConicalMaxProbabilityUpper, None)
        .unwrap();
    assert!((upper.rhs.unwrap() - 0.410375).abs() < 1e-6);
    let pair = report.entry(Relation::ConicalPairSum, None).unwrap();
    assert!((pair.rhs.unwrap() - 0.657655).abs() < 1e-6);
    assert!((report.conical_ic.unwrap() - 0.255321559063052).abs() < 1e-12);

    let report = evaluate_report(&two_povm_qubit_geam(), &rho, &[0.8, 1.5]).unwrap();
    for rel in [Relation::AveragedMaxProbability, Relation::AveragedPairSum] {
        let e = report.entry(rel, None).unwrap();
        assert!(!e.applicable && e.reason.is_some());
    }
    for rel in [
        Relation::ConicalMaxProbabilityLower,
        Relation::ConicalMaxProbabilityUpper,
        Relation::ConicalPairSum,
    ] {
        assert!(!report.entry(rel, None).unwrap().applicable);
    }
    for a in [0.8, 1.5] {
        assert!(
            report
                .entry(Relation::AveragedTsallis, Some(a))
                .unwrap()
                .applicable
        );
        assert!(
            !report
                .entry(Relation::ConicalTsallis, Some(a))
                .unwrap()
                .applicable
        );
    }
    assert!(
        report
            .entry(Relation::AveragedRenyi, Some(1.5))
            .unwrap()
            .applicable
    );
    assert!(report.conical.is_none());
    assert_eq!(report.weights.as_deref().map(<[f64]>::len), Some(2));
}

#[test]
fn mum_closed_forms_for_probability_relations() {
    let mut rng = rng_from_seed(21);
    for d in [2usize, 3, 5] {
        for t in [0.6, 1.0] {
            let set = mums_from_mubs(d, t).unwrap();
            let kappa = mum_efficiency(d, t);
            let df = d as f64;
            for _ in 0..20 {
                let rho = random_state_mixed_rank(&mut rng, d).unwrap();
                let pur = rho.purity();
                let radical = ((kappa * df - 1.0) * (df * pur - 1.0)).max(0.0);
                let maxp = avg_max_prob(&set, &rho, None).unwrap();
                let want = 1.0 / df + (radical / (df + 1.0)).sqrt() / df;
                assert!((maxp.rhs - want).abs() < 1e-10);
                let pair = avg_pair_sum(&set, &rho, None).unwrap();
                let want = (2.0 / df
                    + (2.0 * df - 4.0).sqrt() / df * (radical / (df * df - 1.0)).sqrt())
                .min(1.0);
                assert!(
                    (pair.rhs - want).abs() < 1e-10,
                    "d {d}: {} vs {want}",
                    pair.rhs
                );
                assert!(maxp.holds() && pair.holds());
            }
        }
    }
    // Pure state, d = 3, κ = 1: the pair bound reaches one; mixed states stay below.
    let set = mub_bases(3).unwrap();
    let rho =
        DensityMatrix::pure(&[geam_core::C64::new(1.0, 0.0), 0.0.into(), 0.0.into()]).unwrap();
    assert!((avg_pair_sum(&set, &rho, None).unwrap().rhs - 1.0).abs() < 1e-12);
    let rho = random_state_mixed_rank(&mut rng, 3).unwrap();
    if rho.purity() < 1.0 - 1e-6 {
        assert!(avg_pair_sum(&set, &rho, None).unwrap().rhs < 1.0);
    }
    let set = mub_bases(2).unwrap();
    assert_eq!(
        avg_pair_sum(&set, &DensityMatrix::maximally_mixed(2), None)
            .unwrap()
            .rhs,
        1.0
    );
}

#[test]
fn unproven_renyi_range_is_reported_separately() {
    let set = to_povms(&two_povm_qubit_geam()).unwrap();
    let rho = pure(0.0, 0.0, 1.0);
    assert!(avg_renyi(&set, &rho, 0.5).is_err());
    let b = avg_renyi_unproven(&set, &rho, 0.5).unwrap();
    assert!(b.lhs.is_finite() && b.rhs.is_finite());
}
