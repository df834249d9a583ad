use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use extraspecial::fp::{Fp, PrimeField};
use extraspecial::matrix::FpMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_matrix(p: u8, rows: usize, cols: usize, seed: u64) -> FpMatrix {
    let field = PrimeField::new(p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut m = FpMatrix::zeros(field, rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m.set(i, j, Fp(rng.gen_range(0..p)));
        }
    }
    m
}

fn bench_rref(c: &mut Criterion) {
    let mut group = c.benchmark_group("rref");
    for &(p, n) in &[(3u8, 200usize), (3, 400), (2, 400)] {
        let m = random_matrix(p, n, n + 40, 42);
        group.bench_with_input(
            BenchmarkId::new(format!("p{p}"), n),
            &m,
            |b, m| {
                b.iter(|| {
                    let mut work = m.clone();
                    work.rref()
                })
            },
        );
    }
    group.finish();
}

criterion_group!(benches, bench_rref);
criterion_main!(benches);
