use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use qchaos::analysis::{detect_bands, unfold_and_spacings};
use qchaos::eigen::{diagonalize, eigenvalues};
use qchaos::{build_hamiltonian, BasisTag, CouplingModel, SystemSpec};

fn chain(l: usize) -> SystemSpec {
    SystemSpec::chain(l, 100.0, 1.0, CouplingModel::DynamicalNN { j: 0.0 })
}

fn assembly(c: &mut Criterion) {
    let mut group = c.benchmark_group("assembly");
    for l in [8, 10, 12] {
        let spec = chain(l);
        for basis in [BasisTag::Z, BasisTag::Quasiparticle] {
            group.bench_with_input(BenchmarkId::new(basis.to_string(), l), &spec, |b, spec| {
                b.iter(|| build_hamiltonian(spec, 1.0, basis).unwrap())
            });
        }
    }
    group.finish();
}

fn diagonalization(c: &mut Criterion) {
    let mut group = c.benchmark_group("diagonalization");
    group.sample_size(10);
    for l in [6, 8, 10] {
        let h = build_hamiltonian(&chain(l), 1.0, BasisTag::Z).unwrap();
        group.bench_with_input(BenchmarkId::new("eigenvalues", l), &h, |b, h| {
            b.iter(|| eigenvalues(h).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("full", l), &h, |b, h| {
            b.iter(|| diagonalize(h).unwrap())
        });
    }
    group.finish();
}

fn unfolding(c: &mut Criterion) {
    let spec = chain(10);
    let levels = eigenvalues(&build_hamiltonian(&spec, 1.0, BasisTag::Z).unwrap()).unwrap();
    let bands = detect_bands(&levels, spec.rabi).unwrap();
    let central = levels[bands.central_window.clone()].to_vec();
    c.bench_function("bands/L=10", |b| b.iter(|| detect_bands(&levels, spec.rabi).unwrap()));
    c.bench_function("unfold/central L=10", |b| {
        b.iter(|| unfold_and_spacings(&central).unwrap())
    });
}

criterion_group!(benches, assembly, diagonalization, unfolding);
criterion_main!(benches);
