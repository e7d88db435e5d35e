use criterion::{black_box, criterion_group, criterion_main, Criterion};
use polar_branches::*;

fn double_cusp() -> BivariatePoly {
    &(&BivariatePoly::y_pow(3) - &BivariatePoly::x_pow(4)).pow(2) - &BivariatePoly::x_pow(9)
}

fn deep_branch() -> BivariatePoly {
    // ((y^3 - x^4)^4 + x^17 y^3)^2 + x^22 (y^3 - x^4)^5, multiplicity 24
    let g = &BivariatePoly::y_pow(3) - &BivariatePoly::x_pow(4);
    let inner = &g.pow(4) + &(&BivariatePoly::x_pow(17) * &BivariatePoly::y_pow(3));
    &inner.pow(2) + &(&BivariatePoly::x_pow(22) * &g.pow(5))
}

fn bench_expansion(c: &mut Criterion) {
    let small = double_cusp();
    let big = deep_branch();
    let cfg = Config::numeric();
    c.bench_function("expand multiplicity 6", |b| {
        b.iter(|| prepare_branch(black_box(&small), &cfg, None).unwrap())
    });
    let mut group = c.benchmark_group("deep");
    group.sample_size(20);
    group.bench_function("expand multiplicity 24", |b| {
        b.iter(|| prepare_branch(black_box(&big), &cfg, None).unwrap())
    });
    group.finish();
}

fn bench_prediction(c: &mut Criterion) {
    let chr = CharacteristicData::new(vec![24, 32, 62, 137]).unwrap();
    c.bench_function("predict all polar orders", |b| {
        b.iter(|| {
            for k in 1..24 {
                black_box(predicted_decomposition(black_box(&chr), k).unwrap());
            }
        })
    });
}

fn bench_polar(c: &mut Criterion) {
    let cfg = Config::numeric();
    let small = prepare_branch(&double_cusp(), &cfg, None).unwrap();
    c.bench_function("decompose polar k=2 of multiplicity 6", |b| {
        b.iter(|| decompose_polar(black_box(&small), 2).unwrap())
    });
    let big = prepare_branch(&deep_branch(), &cfg, None).unwrap();
    let mut group = c.benchmark_group("deep");
    group.sample_size(20);
    group.bench_function("decompose polar k=7 of multiplicity 24", |b| {
        b.iter(|| decompose_polar(black_box(&big), 7).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_expansion, bench_prediction, bench_polar);
criterion_main!(benches);
