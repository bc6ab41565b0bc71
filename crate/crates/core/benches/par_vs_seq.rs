use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mtss::charrings::Family;
use mtss::f2linalg::F2Matrix;
use mtss::mtmod::{mt_module, TruncatedModule};
use mtss::par::Exec;
use mtss::resolution::MinimalResolution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(n: usize) -> F2Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut m = F2Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(0.5) {
                m.set(i, j, true);
            }
        }
    }
    m
}

fn rref(c: &mut Criterion) {
    let mut g = c.benchmark_group("rref");
    for n in [256, 1024] {
        let m = random_matrix(n);
        for exec in [Exec::Sequential, Exec::Parallel] {
            g.bench_with_input(BenchmarkId::new(format!("{exec:?}"), n), &m, |b, m| b.iter(|| m.rref_with(exec)));
        }
    }
    g.finish();
}

fn resolution(c: &mut Criterion) {
    let mut g = c.benchmark_group("resolution");
    g.sample_size(10);
    let sphere = TruncatedModule::sphere().truncate(30);
    let mt = mt_module(Family::SO, 15, 4, 22).unwrap().module;
    for (name, m, s_max, t_max) in [("sphere", &sphere, 8, 30), ("MTSO(15,4)", &mt, 6, 22)] {
        for exec in [Exec::Sequential, Exec::Parallel] {
            g.bench_function(BenchmarkId::new(format!("{exec:?}"), name), |b| {
                b.iter(|| MinimalResolution::with_exec(m, s_max, t_max, exec).unwrap())
            });
        }
    }
    g.finish();
}

criterion_group!(benches, rref, resolution);
criterion_main!(benches);
