//! Randomized verification of the symplectic-connection pipeline: the two
//! N-tensor identities, the end-to-end existence construction, the connection
//! axioms of the corrected connection, and the affine structure of the
//! solution space under admissible deformations.

use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symcon_core::corpus::{
    corpus_instance, instance_grid, random_superfunction, random_vector_field,
};
use symcon_core::{
    check_admissible, deform, extract_n, fedosov_correct, n_antisymmetry_residual,
    n_cyclic_residual, random_cochain, s_from_cochain, verify_symplectic, Chart, Connection,
    Parity, STensor,
};

fn parity_of(b: bool) -> Parity {
    if b {
        Parity::Odd
    } else {
        Parity::Even
    }
}

#[test]
fn n_identities_hold_on_the_grid() {
    for (idx, (p, q, parity)) in instance_grid().into_iter().enumerate() {
        for seed in 0..2u64 {
            let inst = corpus_instance(p, q, parity, 2, 100 * idx as u64 + seed).unwrap();
            let flat = Connection::flat(&inst.chart);
            let n_tensor = extract_n(&flat, &inst.omega).unwrap();
            let n = inst.chart.dim();
            for i in 0..n {
                for j in 0..n {
                    for k in 0..n {
                        let anti =
                            n_antisymmetry_residual(&inst.omega, &n_tensor, i, j, k).unwrap();
                        assert!(
                            anti.is_zero(),
                            "antisymmetry residual at ({i},{j},{k}), instance {idx}/{seed}"
                        );
                        let cyc = n_cyclic_residual(&inst.omega, &n_tensor, i, j, k).unwrap();
                        assert!(
                            cyc.is_zero(),
                            "cyclic residual at ({i},{j},{k}), instance {idx}/{seed}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn existence_pipeline_on_the_grid() {
    for (idx, (p, q, parity)) in instance_grid().into_iter().enumerate() {
        let inst = corpus_instance(p, q, parity, 2, 4200 + idx as u64).unwrap();
        let flat = Connection::flat(&inst.chart);
        let corrected = fedosov_correct(&flat, &inst.omega).unwrap();
        assert!(
            corrected.is_symmetric(),
            "corrected connection symmetric, instance {idx}"
        );
        let report = verify_symplectic(&corrected, &inst.omega).unwrap();
        assert!(
            report.passed(),
            "verification failed on instance {idx}: {report:?}"
        );
    }
}

#[test]
fn corrected_connection_satisfies_the_axioms() {
    // The 1/3-correction is again a connection: graded Leibniz in the upper
    // slot and function-linearity in the lower slot, on random fields.
    let inst = corpus_instance(2, 2, Parity::Even, 2, 77).unwrap();
    let chart = inst.chart.clone();
    let corrected = fedosov_correct(&Connection::flat(&chart), &inst.omega).unwrap();
    for seed in 0..25u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let pf = parity_of(rng.gen_bool(0.5));
        let px = parity_of(rng.gen_bool(0.5));
        let py = parity_of(rng.gen_bool(0.5));
        let f = random_superfunction(&mut rng, chart.p(), chart.q(), pf, 1, 1);
        let x = random_vector_field(&mut rng, &chart, px, 1);
        let y = random_vector_field(&mut rng, &chart, py, 1);

        let fx = x.scale_sf(&f).unwrap();
        assert_eq!(
            corrected.covariant_derivative(&fx, &y).unwrap(),
            corrected
                .covariant_derivative(&x, &y)
                .unwrap()
                .scale_sf(&f)
                .unwrap(),
            "lower-slot linearity, seed {seed}"
        );

        let fy = y.scale_sf(&f).unwrap();
        let lhs = corrected.covariant_derivative(&x, &fy).unwrap();
        let rhs = &y.scale_sf(&x.apply(&f).unwrap()).unwrap()
            + &corrected
                .covariant_derivative(&x, &y)
                .unwrap()
                .scale_sf(&f)
                .unwrap()
                .neg_if(px.koszul(pf));
        assert_eq!(lhs, rhs, "upper-slot Leibniz, seed {seed}");

        // torsion of the corrected connection vanishes off coordinate fields too
        assert!(
            corrected.torsion(&x, &y).unwrap().is_zero(),
            "torsion spot check, seed {seed}"
        );

        // and so does the covariant derivative of the form: the guard against
        // sign bugs in the bilinear-extension rules
        let pz = parity_of(rng.gen_bool(0.5));
        let z = random_vector_field(&mut rng, &chart, pz, 1);
        let nabla_omega = corrected
            .covariant_derivative_bilinear(inst.omega.form(), &x, &y, &z)
            .unwrap();
        assert!(
            nabla_omega.is_zero(),
            "compatibility spot check, seed {seed}"
        );
    }
}

#[test]
fn deformations_preserve_the_symplectic_property() {
    for (idx, (p, q, parity)) in instance_grid().into_iter().enumerate() {
        let inst = corpus_instance(p, q, parity, 1, 9100 + idx as u64).unwrap();
        let base = fedosov_correct(&Connection::flat(&inst.chart), &inst.omega).unwrap();
        for seed in 0..2u64 {
            let cochain = random_cochain(&inst.chart, parity, 1, 31 * idx as u64 + seed);
            let s = s_from_cochain(&inst.omega, &cochain).unwrap();
            assert!(check_admissible(&inst.omega, &s).unwrap().passed());
            let deformed = deform(&base, &s).unwrap();
            assert!(
                verify_symplectic(&deformed, &inst.omega).unwrap().passed(),
                "deformed connection fails, instance {idx}, seed {seed}"
            );
        }
    }
}

#[test]
fn affine_structure_of_the_solution_space() {
    let inst = corpus_instance(2, 2, Parity::Even, 2, 555).unwrap();
    let chart = inst.chart.clone();
    let c1 = fedosov_correct(&Connection::flat(&chart), &inst.omega).unwrap();
    let s = s_from_cochain(&inst.omega, &random_cochain(&chart, Parity::Even, 2, 556)).unwrap();
    let c2 = deform(&c1, &s).unwrap();
    assert!(verify_symplectic(&c2, &inst.omega).unwrap().passed());

    // the difference of two symplectic connections is an admissible tensor
    let diff = STensor::from_connection_difference(&c2, &c1).unwrap();
    assert!(check_admissible(&inst.omega, &diff).unwrap().passed());

    // affine combinations stay symplectic
    for t in [
        BigRational::new(1.into(), 2.into()),
        BigRational::from_integer((-1).into()),
        BigRational::from_integer(2.into()),
    ] {
        let combo = Connection::affine_combination(&c1, &c2, &t).unwrap();
        assert!(
            verify_symplectic(&combo, &inst.omega).unwrap().passed(),
            "affine combination at t={t} fails"
        );
    }
}

#[test]
fn deformation_soundness_and_completeness() {
    // deform(C, S) is symplectic exactly when S is admissible, in both
    // directions, over a mix of admissible and broken tensors.
    let inst = corpus_instance(2, 1, Parity::Even, 1, 808).unwrap();
    let chart = inst.chart.clone();
    let base = fedosov_correct(&Connection::flat(&chart), &inst.omega).unwrap();
    let n = chart.dim();
    for seed in 0..30u64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = match seed % 3 {
            0 => {
                s_from_cochain(&inst.omega, &random_cochain(&chart, Parity::Even, 1, seed)).unwrap()
            }
            _ => {
                // a random parity-valid table, usually inadmissible
                let mut table = vec![vec![vec![chart.zero(); n]; n]; n];
                for (i, plane) in table.iter_mut().enumerate() {
                    for (j, row) in plane.iter_mut().enumerate() {
                        for (k, entry) in row.iter_mut().enumerate() {
                            if rng.gen_bool(0.5) {
                                continue;
                            }
                            let parity = chart.parity(i) + chart.parity(j) + chart.parity(k);
                            *entry =
                                random_superfunction(&mut rng, chart.p(), chart.q(), parity, 1, 1);
                        }
                    }
                }
                STensor::new(chart.clone(), table).unwrap()
            }
        };
        let admissible = check_admissible(&inst.omega, &s).unwrap().passed();
        let symplectic = verify_symplectic(&deform(&base, &s).unwrap(), &inst.omega)
            .unwrap()
            .passed();
        assert_eq!(admissible, symplectic, "equivalence failed at seed {seed}");
    }
}

#[test]
fn random_cochain_degenerate_chart_edge_cases() {
    // Without odd coordinates an odd-parity cochain has no candidates at all.
    let chart = Chart::standard(2, 0);
    let odd = random_cochain(&chart, Parity::Odd, 2, 1);
    assert!(odd.is_zero());
    // Even-parity cochains on an all-even chart are plain symmetric tensors.
    let even = random_cochain(&chart, Parity::Even, 2, 1);
    even.validate().unwrap();
}

#[test]
fn flat_connection_is_symplectic_for_constant_forms() {
    let chart = Chart::standard(2, 2);
    let omega = symcon_core::corpus::darboux_two_form(&chart, Parity::Even).unwrap();
    let flat = Connection::flat(&chart);
    assert!(verify_symplectic(&flat, &omega).unwrap().passed());
    assert_eq!(fedosov_correct(&flat, &omega).unwrap(), flat);
}

#[test]
fn pipeline_works_on_interleaved_coordinate_order() {
    // Coordinates need not be sorted evens-first; the scalar-slot mapping has
    // to hold up through the whole construction.
    use symcon_core::parity::Parity as P;
    let chart = symcon_core::Chart::new(vec![
        ("a".into(), P::Even),
        ("t".into(), P::Odd),
        ("b".into(), P::Even),
    ])
    .unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let omega = symcon_core::corpus::random_symplectic_form(&mut rng, &chart, P::Even, 2).unwrap();
    let corrected = fedosov_correct(&Connection::flat(&chart), &omega).unwrap();
    assert!(verify_symplectic(&corrected, &omega).unwrap().passed());
    let n_tensor = extract_n(&Connection::flat(&chart), &omega).unwrap();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                assert!(n_antisymmetry_residual(&omega, &n_tensor, i, j, k)
                    .unwrap()
                    .is_zero());
                assert!(n_cyclic_residual(&omega, &n_tensor, i, j, k)
                    .unwrap()
                    .is_zero());
            }
        }
    }
}

#[test]
fn n_tensor_defining_relation_on_random_fields() {
    // nabla0_X omega(Y,Z) = (-1)^{|omega||X|} omega(N(X,Y), Z) holds as a
    // tensor identity, not just on coordinate fields.
    for (idx, (p, q, parity)) in instance_grid().into_iter().enumerate() {
        let inst = corpus_instance(p, q, parity, 1, 2700 + idx as u64).unwrap();
        let chart = inst.chart.clone();
        let flat = Connection::flat(&chart);
        let n_tensor = extract_n(&flat, &inst.omega).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(6200 + idx as u64);
        let px = parity_of(rng.gen_bool(0.5));
        let py = parity_of(rng.gen_bool(0.5));
        let pz = parity_of(rng.gen_bool(0.5));
        let x = random_vector_field(&mut rng, &chart, px, 1);
        let y = random_vector_field(&mut rng, &chart, py, 1);
        let z = random_vector_field(&mut rng, &chart, pz, 1);

        let lhs = flat
            .covariant_derivative_bilinear(inst.omega.form(), &x, &y, &z)
            .unwrap();
        let n_xy = n_tensor.eval(&x, &y).unwrap();
        let rhs = inst
            .omega
            .eval(&n_xy, &z)
            .unwrap()
            .neg_if(inst.omega.parity().koszul(px));
        assert_eq!(lhs, rhs, "defining relation on fields, instance {idx}");
    }
}

#[test]
fn one_shot_solver_matches_the_factored_one() {
    let inst = corpus_instance(2, 1, Parity::Even, 2, 33).unwrap();
    let chart = inst.chart.clone();
    let targets: Vec<_> = (0..chart.dim())
        .map(|k| chart.coordinate_function(0).pow(k as u32))
        .collect();
    let one_shot = symcon_core::solve_against_omega(&inst.omega, &targets).unwrap();
    assert_eq!(one_shot, inst.omega.solve(&targets).unwrap());
}
