use num_complex::Complex64;
use proptest::prelude::*;
use qchaos::analysis::{ks_distance, ks_two_sample, poisson_cdf, unfold_and_spacings, wigner_cdf};
use qchaos::eigen::eigenvalues;
use qchaos::{
    build_hamiltonian, build_z_hamiltonian, coupling_table, participation_number, BasisTag, CouplingModel, SystemSpec,
};

fn coupling() -> impl Strategy<Value = CouplingModel> {
    prop_oneof![
        Just(CouplingModel::DynamicalNN { j: 0.0 }),
        (any::<u64>(), 0u64..4).prop_map(|(seed, stream)| CouplingModel::RandomNN { j: 0.0, seed, stream }),
        (any::<u64>(), 0u64..4).prop_map(|(seed, stream)| CouplingModel::RandomAll { j: 0.0, seed, stream }),
    ]
}

fn system() -> impl Strategy<Value = SystemSpec> {
    (
        1usize..=5,
        0.5f64..50.0,
        -3.0f64..3.0,
        -std::f64::consts::PI..std::f64::consts::PI,
        coupling(),
    )
        .prop_map(|(l, rabi, gradient, phi, coupling)| {
            let mut spec = SystemSpec::chain(l, rabi, gradient, coupling);
            spec.phi = phi;
            spec
        })
}

fn relative_gap(a: &[f64], b: &[f64]) -> f64 {
    let scale = a.iter().fold(1.0f64, |m, x| m.max(x.abs()));
    a.iter().zip(b).fold(0.0f64, |m, (x, y)| m.max((x - y).abs())) / scale
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn assembled_matrices_are_hermitian(spec in system(), j in 0.0f64..20.0) {
        for basis in [BasisTag::Z, BasisTag::Quasiparticle] {
            let h = build_hamiltonian(&spec, j, basis).unwrap();
            prop_assert!(h.hermiticity_defect() <= 1e-15 * h.max_abs().max(1.0));
        }
    }

    #[test]
    fn spectrum_ignores_drive_phase(spec in system(), j in 0.0f64..20.0) {
        let along_y = SystemSpec { phi: std::f64::consts::FRAC_PI_2, ..spec.clone() };
        let along_x = SystemSpec { phi: 0.0, ..spec };
        let a = eigenvalues(&build_z_hamiltonian(&along_y, j).unwrap()).unwrap();
        let b = eigenvalues(&build_z_hamiltonian(&along_x, j).unwrap()).unwrap();
        prop_assert!(relative_gap(&a, &b) < 1e-10);
    }

    #[test]
    fn spectrum_ignores_drive_sign(spec in system(), j in 0.0f64..20.0) {
        let flipped = SystemSpec { rabi: -spec.rabi, ..spec.clone() };
        let a = eigenvalues(&build_z_hamiltonian(&spec, j).unwrap()).unwrap();
        let b = eigenvalues(&build_z_hamiltonian(&flipped, j).unwrap()).unwrap();
        prop_assert!(relative_gap(&a, &b) < 1e-10);
    }

    #[test]
    fn bases_share_a_spectrum(spec in system(), j in 0.0f64..20.0) {
        let a = eigenvalues(&build_hamiltonian(&spec, j, BasisTag::Z).unwrap()).unwrap();
        let b = eigenvalues(&build_hamiltonian(&spec, j, BasisTag::Quasiparticle).unwrap()).unwrap();
        prop_assert!(relative_gap(&a, &b) < 1e-10);
    }

    #[test]
    fn random_tables_are_reproducible_and_bounded(l in 1usize..9, seed in any::<u64>(), stream in 0u64..8, j in 0.01f64..10.0) {
        for model in [
            CouplingModel::RandomNN { j, seed, stream },
            CouplingModel::RandomAll { j, seed, stream },
        ] {
            let first = coupling_table(&model, l);
            prop_assert_eq!(&first, &coupling_table(&model, l));
            prop_assert!(first.iter().all(|(_, v)| v.abs() <= j));
            let pairs = if model.is_nearest_neighbor() { l - 1 } else { l * (l - 1) / 2 };
            prop_assert!(first.len() <= pairs);
        }
    }

    #[test]
    fn participation_is_bounded_and_symmetric(
        raw in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..40),
        phases in prop::collection::vec(0.0f64..std::f64::consts::TAU, 40),
        rotate in 0usize..40,
    ) {
        let norm = raw.iter().map(|(a, b)| a * a + b * b).sum::<f64>().sqrt();
        prop_assume!(norm > 1e-6);
        let v: Vec<Complex64> = raw.iter().map(|&(a, b)| Complex64::new(a, b) / norm).collect();
        let npc = participation_number(&v).unwrap();
        prop_assert!(npc >= 1.0 - 1e-12 && npc <= v.len() as f64 + 1e-9);

        let mut shuffled: Vec<Complex64> = v.iter().zip(&phases).map(|(x, &p)| x * Complex64::from_polar(1.0, p)).collect();
        let shift = rotate % shuffled.len();
        shuffled.rotate_left(shift);
        shuffled.reverse();
        prop_assert!((participation_number(&shuffled).unwrap() - npc).abs() < 1e-9 * npc);
    }

    #[test]
    fn ks_distances_are_bounded(samples in prop::collection::vec(0.0f64..6.0, 1..200)) {
        for d in [ks_distance(&samples, poisson_cdf), ks_distance(&samples, wigner_cdf)] {
            prop_assert!((0.0..=1.0).contains(&d));
        }
        prop_assert_eq!(ks_two_sample(&samples, &samples), 0.0);
    }

    #[test]
    fn unfolded_spacings_have_unit_mean(mut levels in prop::collection::vec(-50.0f64..50.0, 30..300)) {
        levels.sort_by(f64::total_cmp);
        prop_assume!(levels[levels.len() - 1] > levels[0]);
        let stats = unfold_and_spacings(&levels).unwrap();
        let mean = stats.spacings.iter().sum::<f64>() / stats.spacings.len() as f64;
        prop_assert!((mean - 1.0).abs() < 1e-9);
        prop_assert!(stats.spacings.iter().all(|&s| s >= 0.0));
        prop_assert!(stats.ks_poisson <= 1.0 && stats.ks_wigner <= 1.0);
    }
}
