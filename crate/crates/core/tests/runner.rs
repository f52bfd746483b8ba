use qchaos::sweep::{JGrid, SweepOutput};
use qchaos::{eigenstate_profile, run_sweep, BasisTag, CouplingModel, StateSelector, SweepPlan, SystemSpec};

fn chain(l: usize) -> SystemSpec {
    SystemSpec::chain(l, 100.0, 1.0, CouplingModel::DynamicalNN { j: 0.0 })
}

#[test]
fn unperturbed_profile_is_nearly_uniform() {
    let profile = eigenstate_profile(&chain(8), 0.0, BasisTag::Z, StateSelector::Middle).unwrap();
    let n = profile.weights.len() as f64;
    assert!((profile.weights.iter().sum::<f64>() - 1.0).abs() < 1e-9);
    for w in &profile.weights {
        assert!((0.5 / n..=2.0 / n).contains(w), "weight {w}");
    }
}

#[test]
fn unperturbed_states_are_extended_in_the_computational_basis() {
    let plan = SweepPlan::new(chain(8), JGrid::Explicit { values: vec![0.0] }, BasisTag::Z);
    let row = &run_sweep(&plan).unwrap().rows[0];
    assert!(row.mean_npc >= 0.8 * 256.0);
    assert_eq!(row.central_band_size, 70);
}

#[test]
fn sweeps_are_deterministic() {
    let mut spec = chain(6);
    spec.coupling = CouplingModel::RandomAll {
        j: 0.0,
        seed: 4,
        stream: 0,
    };
    let plan = SweepPlan::new(
        spec,
        JGrid::Log {
            start: 0.01,
            stop: 10.0,
            points: 4,
            include_zero: true,
        },
        BasisTag::Z,
    )
    .with_ensemble(4, None)
    .with_outputs(&[SweepOutput::Npc, SweepOutput::Bands, SweepOutput::EigenstateProfiles]);
    let a = run_sweep(&plan).unwrap();
    let b = run_sweep(&plan).unwrap();
    assert_eq!(a.to_csv(), b.to_csv());
    assert_eq!(a.profiles_csv(), b.profiles_csv());
    assert!(a.rows[1..].iter().all(|r| r.ensemble_stderr > 0.0));
}

#[test]
fn failures_name_the_sweep_point() {
    let mut spec = chain(4);
    spec.max_qubits = 3;
    let plan = SweepPlan::new(spec, JGrid::Explicit { values: vec![0.5] }, BasisTag::Z);
    assert!(matches!(run_sweep(&plan), Err(qchaos::Error::Capacity { .. })));

    let mut plan = SweepPlan::new(chain(2), JGrid::Explicit { values: vec![0.5] }, BasisTag::Z)
        .with_outputs(&[SweepOutput::EigenstateProfiles]);
    plan.sweep.profile_state = StateSelector::Offset(5);
    match run_sweep(&plan) {
        Err(qchaos::Error::AtPoint { j, member, .. }) => assert_eq!((j, member), (0.5, 0)),
        other => panic!("expected a located error, got {other:?}"),
    }
}
