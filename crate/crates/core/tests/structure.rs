use geam_core::bounds::{averaged_ic, averaged_ic_bound, conical_ic, mum_average_ic, weights};
use geam_core::catalog::{
    catalog, conical_qubit_geam, lookup, mub_bases, mub_vectors, mum_efficiency, mums_from_mubs,
    pauli_eigenvectors, pauli_mub_design, two_povm_qubit_geam, CatalogMeasurement,
};
use geam_core::linalg::{hs_inner, HermitianOperator};
use geam_core::measurements::{
    characterize_equiangular, characterize_symmetric, conical_design_params, dual_operators,
    from_symmetric, is_informationally_complete, is_projective_2design, to_povms,
    verify_conical_operator_identity,
};
use geam_core::sampling::{random_state_mixed_rank, rng_from_seed};
use geam_core::{EquiangularMeasurement, Error};

fn sqrt(x: f64) -> f64 {
    x.sqrt()
}

#[test]
fn every_catalog_entry_matches_its_expected_values() {
    for entry in catalog() {
        let dev = entry.max_expected_deviation().unwrap();
        assert!(dev <= 1e-12, "{}: {dev}", entry.id);
        assert!(!entry.expected.is_empty());
    }
    assert!(lookup("bogus_id").is_none());
}

#[test]
fn two_povm_parameters() {
    let m = two_povm_qubit_geam();
    let p = m.params();
    assert_eq!(p.n, vec![2, 3]);
    for mu in 0..2 {
        assert!((p.a[mu] - 0.4).abs() < 1e-12);
        assert!((p.b[mu] - 1.0).abs() < 1e-12);
    }
    assert!(p.c[0].unwrap().abs() < 1e-12);
    assert!((p.c[1].unwrap() - 0.25).abs() < 1e-12);
    assert!((p.f - 0.5).abs() < 1e-12);
    assert!(matches!(
        conical_design_params(&m),
        Err(Error::NotConicalDesign { .. })
    ));

    let report = is_informationally_complete(&m);
    assert!(report.count_condition);
    assert_eq!(report.rank, 4);
    assert!(report.complete);

    let set = to_povms(&m).unwrap();
    let sp = set.params();
    assert!((sp.w[0] - 1.0).abs() < 1e-12 && (sp.w[1] - 2.0 / 3.0).abs() < 1e-12);
    assert!((sp.x[0] - 1.0).abs() < 1e-12 && (sp.x[1] - 4.0 / 9.0).abs() < 1e-12);
    assert!(sp.y[0].unwrap().abs() < 1e-12 && (sp.y[1].unwrap() - 1.0 / 9.0).abs() < 1e-12);
    assert!((sp.z[0][1].unwrap() - 1.0 / 3.0).abs() < 1e-12);
}

#[test]
fn conical_example_closed_forms() {
    let m = conical_qubit_geam();
    let s5 = sqrt(5.0);
    let cp = conical_design_params(&m).unwrap();
    assert!((cp.s - (21.0 - 9.0 * s5) / 8.0).abs() < 1e-12);
    assert!((cp.sigma - 11.0 * (3.0 - s5).powi(2) / 16.0).abs() < 1e-12);
    let g1 = (3.0 * s5 - 5.0) / 4.0;
    assert!((m.params().gamma[0] - g1).abs() < 1e-12);
    assert!((m.params().gamma[1] - (1.0 - g1)).abs() < 1e-12);

    let ops: Vec<&HermitianOperator> = m.elements().collect();
    assert_eq!(ops.len(), 5);
    let self_overlap = (7.0 - 3.0 * s5) / 2.0;
    let intra = (7.0 - 3.0 * s5) / 8.0;
    let inter = (7.0 * s5 - 15.0) / 8.0;
    let group = |k: usize| if k < 2 { 0 } else { 1 };
    for i in 0..5 {
        for j in 0..5 {
            let v = hs_inner(ops[i], ops[j]).unwrap();
            let want = if i == j {
                self_overlap
            } else if group(i) == group(j) {
                intra
            } else {
                inter
            };
            assert!((v - want).abs() < 1e-12, "({i},{j}): {v} vs {want}");
        }
    }
    assert!(verify_conical_operator_identity(&m).unwrap() <= 1e-10);
    let ic = conical_ic(&cp, 2, 1.0);
    assert!((ic - 0.255321559063052).abs() < 1e-12);
}

#[test]
fn pauli_design_closed_forms() {
    let m = pauli_mub_design();
    let cp = conical_design_params(&m).unwrap();
    assert!((cp.s - 1.0 / 9.0).abs() < 1e-12 && (cp.sigma - 1.0 / 3.0).abs() < 1e-12);
    assert!(verify_conical_operator_identity(&m).unwrap() <= 1e-12);
    let set = to_povms(&m).unwrap();
    for k in 0..=20 {
        let r2 = k as f64 / 20.0;
        let purity = (1.0 + r2) / 2.0;
        assert!(
            (averaged_ic_bound(set.params(), purity, 2).unwrap() - (3.0 + r2) / 6.0).abs() <= 1e-12
        );
        assert!((conical_ic(&cp, 2, purity) - (3.0 + r2) / 18.0).abs() <= 1e-12);
    }
    let vecs: Vec<_> = pauli_eigenvectors().into_iter().flatten().collect();
    assert!(is_projective_2design(&vecs).unwrap());
}

#[test]
fn mub_sets() {
    for d in [2usize, 3, 5, 7] {
        let bases = mub_vectors(d).unwrap();
        assert_eq!(bases.len(), d + 1);
        for (mu, bm) in bases.iter().enumerate() {
            for (nu, bn) in bases.iter().enumerate() {
                for (i, u) in bm.iter().enumerate() {
                    for (j, v) in bn.iter().enumerate() {
                        let ov: geam_core::C64 = u.iter().zip(v).map(|(a, b)| a.conj() * b).sum();
                        let want = if mu == nu {
                            if i == j {
                                1.0
                            } else {
                                0.0
                            }
                        } else {
                            1.0 / d as f64
                        };
                        assert!((ov.norm_sqr() - want).abs() < 1e-12);
                    }
                }
            }
        }
        let set = mub_bases(d).unwrap();
        let p = set.params();
        for mu in 0..=d {
            assert!((p.w[mu] - 1.0).abs() < 1e-12 && (p.x[mu] - 1.0).abs() < 1e-12);
            assert!(p.y[mu].unwrap().abs() < 1e-12);
        }
    }
    for d in [2usize, 3] {
        let vecs: Vec<_> = mub_vectors(d).unwrap().into_iter().flatten().collect();
        assert!(is_projective_2design(&vecs).unwrap());
    }
    assert_eq!(mub_bases(4).unwrap_err(), Error::NotPrime(4));
}

#[test]
fn mum_conditions_on_grid() {
    for d in [2usize, 3, 5] {
        for t in [0.3, 0.6, 0.9, 1.0] {
            let set = mums_from_mubs(d, t).unwrap();
            let kappa = mum_efficiency(d, t);
            let p = set.params();
            let df = d as f64;
            for mu in 0..=d {
                assert!((p.w[mu] - 1.0).abs() < 1e-10);
                assert!((p.x[mu] - kappa).abs() < 1e-10);
                assert!((p.y[mu].unwrap() - (1.0 - kappa) / (df - 1.0)).abs() < 1e-10);
                for nu in 0..=d {
                    if nu != mu {
                        assert!((p.z[mu][nu].unwrap() - 1.0 / df).abs() < 1e-10);
                    }
                }
            }
        }
    }
    let kappa = mum_efficiency(2, 1.0 / 2f64.sqrt());
    assert!((kappa - 0.75).abs() < 1e-15);
    assert!(matches!(
        mums_from_mubs(3, 0.0),
        Err(Error::DegenerateFrame { .. })
    ));
    let nearly_flat = mums_from_mubs(3, 1e-3).unwrap();
    assert!(weights(nearly_flat.params()).is_ok());
    assert!(mums_from_mubs(3, 1.2).is_err());
    assert!(mums_from_mubs(6, 0.5).is_err());
}

#[test]
fn mum_average_ic_is_exact() {
    let mut rng = rng_from_seed(11);
    for d in [2usize, 3] {
        for t in [0.6, 1.0] {
            let set = mums_from_mubs(d, t).unwrap();
            let kappa = mum_efficiency(d, t);
            for _ in 0..200 {
                let rho = random_state_mixed_rank(&mut rng, d).unwrap();
                let measured = averaged_ic(&set, &rho).unwrap();
                let closed = mum_average_ic(d, kappa, rho.purity()).unwrap();
                let bound = averaged_ic_bound(set.params(), rho.purity(), d).unwrap();
                assert!((measured - closed).abs() <= 1e-10);
                assert!((measured - bound).abs() <= 1e-10);
            }
        }
    }
}

#[test]
fn symmetric_and_equiangular_round_trip() {
    for entry in catalog() {
        let set = entry.measurement.as_symmetric().unwrap();
        let again = characterize_symmetric(set.povms().to_vec()).unwrap();
        assert_eq!(again.params().n, set.params().n);
        let m = entry.measurement.as_equiangular().unwrap();
        let gammas = m.params().gamma.clone();
        let rebuilt = from_symmetric(&gammas, &to_povms(&m).unwrap()).unwrap();
        for (a, b) in rebuilt.elements().zip(m.elements()) {
            assert!((a.matrix() - b.matrix()).max_abs() < 1e-12);
        }
        let recharacterized = characterize_equiangular(m.groups().to_vec()).unwrap();
        assert!((recharacterized.params().f - 1.0 / m.dim() as f64).abs() < 1e-12);
    }
}

fn dual_residuals(m: &EquiangularMeasurement, rho: &geam_core::DensityMatrix) -> (f64, f64) {
    let duals = dual_operators(m).unwrap();
    let p = m.params();
    let mf = p.groups() as f64;
    let f = p.f;
    let ops: Vec<&HermitianOperator> = m.elements().collect();
    let probs: Vec<f64> = ops
        .iter()
        .map(|q| hs_inner(q, rho.operator()).unwrap())
        .collect();
    let flat: Vec<(usize, &HermitianOperator)> = duals
        .iter()
        .enumerate()
        .flat_map(|(mu, g)| g.iter().map(move |op| (mu, op)))
        .collect();

    let mut recon: f64 = 0.0;
    for (k, q) in ops.iter().enumerate() {
        let s: f64 = flat
            .iter()
            .zip(&probs)
            .map(|((_, g), pr)| pr * hs_inner(q, g).unwrap())
            .sum();
        recon = recon.max((s - probs[k]).abs());
    }

    let mut gram: f64 = 0.0;
    let gap = |mu: usize| p.frame_gap(mu).unwrap();
    let mut idx = Vec::new();
    for (mu, g) in duals.iter().enumerate() {
        for i in 0..g.len() {
            idx.push((mu, i));
        }
    }
    for (x, &(mu, i)) in idx.iter().enumerate() {
        for (y, &(nu, j)) in idx.iter().enumerate() {
            let same = mu == nu;
            let a2 = p.a[mu] * p.a[mu];
            let mut num = 0.0;
            if same {
                if i == j {
                    num += gap(mu);
                }
                num += a2 * (p.c[mu].unwrap() - f);
            }
            let pred = num / (gap(mu) * gap(nu)) + f / (mf * mf * p.gamma[mu] * p.gamma[nu]);
            let got = hs_inner(flat[x].1, flat[y].1).unwrap();
            gram = gram.max((got - pred).abs());
        }
    }
    (recon, gram)
}

#[test]
fn dual_frame_identities() {
    let mut rng = rng_from_seed(5);
    for entry in catalog() {
        let m = entry.measurement.as_equiangular().unwrap();
        for _ in 0..20 {
            let rho = random_state_mixed_rank(&mut rng, m.dim()).unwrap();
            let (recon, gram) = dual_residuals(&m, &rho);
            assert!(recon <= 1e-10, "{}: {recon}", entry.id);
            assert!(gram <= 1e-10, "{}: {gram}", entry.id);
        }
    }
}

#[test]
fn conical_ic_matches_measured_ic() {
    let mut rng = rng_from_seed(17);
    for entry in catalog() {
        let m = entry.measurement.as_equiangular().unwrap();
        let Ok(cp) = conical_design_params(&m) else {
            continue;
        };
        assert!(verify_conical_operator_identity(&m).unwrap() <= 1e-10);
        for _ in 0..50 {
            let rho = random_state_mixed_rank(&mut rng, m.dim()).unwrap();
            let p = m.probabilities(&rho).unwrap();
            let ic = geam_core::entropies::index_of_coincidence(&p);
            assert!(
                (ic - conical_ic(&cp, m.dim(), rho.purity())).abs() <= 1e-10,
                "{}",
                entry.id
            );
        }
    }
}

#[test]
fn perturbed_operator_names_condition() {
    let m = conical_qubit_geam();
    let mut groups = m.groups().to_vec();
    let bump = HermitianOperator::from_real_diagonal(&[1e-4, -1e-4]);
    groups[0][0] = groups[0][0].add(&bump);
    let err = characterize_equiangular(groups).unwrap_err();
    assert!(matches!(err, Error::NotEquiangular { .. }), "{err:?}");
}

#[test]
fn catalog_symmetric_entries_expose_uniform_geam() {
    let entry = lookup("mub_d3").unwrap();
    assert!(matches!(
        entry.measurement,
        CatalogMeasurement::Symmetric(_)
    ));
    let m = entry.measurement.as_equiangular().unwrap();
    assert!(m.params().gamma.iter().all(|g| (g - 0.25).abs() < 1e-15));
    assert!(conical_design_params(&m).is_ok());
}
