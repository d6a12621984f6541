use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use spinorlab::linalg::{hermitian_eig, random, singular_values};
use spinorlab::projections::proj_sym;
use spinorlab::{clifford, hypercube, OptimizerConfig, PExponent};

fn svd_and_eig(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut group = c.benchmark_group("decompositions");
    for side in [8, 16, 32, 64] {
        let m = random::gaussian(&mut rng, side, side);
        let h = m.adjoint_mul(&m);
        group.bench_with_input(BenchmarkId::new("singular_values", side), &m, |b, m| b.iter(|| singular_values(m)));
        group.bench_with_input(BenchmarkId::new("hermitian_eig", side), &h, |b, h| {
            b.iter(|| hermitian_eig(h, 1e-12).unwrap())
        });
    }
    group.finish();
}

fn optimizer(c: &mut Criterion) {
    let sym = proj_sym(2).unwrap();
    let opt = OptimizerConfig {
        seed: 7,
        restarts: 4,
        max_iter: 100,
        ..OptimizerConfig::default()
    };
    let mut group = c.benchmark_group("level_two_search");
    group.sample_size(10);
    for p in [1.0, 4.0] {
        let pe = PExponent::new(p).unwrap();
        group.bench_with_input(BenchmarkId::new("sym_s2", p), &pe, |b, &pe| {
            b.iter(|| sym.level_lower_bound(2, pe, &opt, None).unwrap())
        });
    }
    group.finish();
}

fn exact_enumerations(c: &mut Criterion) {
    let mut group = c.benchmark_group("enumerations");
    for n in [3, 4, 5] {
        group.bench_with_input(BenchmarkId::new("tau_cb_bound", n), &n, |b, &n| {
            b.iter(|| clifford::tau_cb_bound(n).unwrap())
        });
        group.bench_with_input(BenchmarkId::new("fg_identity", n), &n, |b, &n| {
            b.iter(|| hypercube::fg_identity_check(n).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, svd_and_eig, optimizer, exact_enumerations);
criterion_main!(benches);
