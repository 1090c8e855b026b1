use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use lamina_core::kneading::{address_from_kneading, kneading_of_angle};
use lamina_core::lamination::enumerate;
use lamina_core::Angle;

fn bench_enumerate(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate");
    for n in [8u32, 10, 12] {
        g.bench_with_input(BenchmarkId::from_parameter(n), &n, |b, &n| {
            b.iter(|| enumerate(n).unwrap())
        });
    }
    g.finish();
}

fn bench_kneading(c: &mut Criterion) {
    let x: Angle = "13901/32767".parse().unwrap();
    c.bench_function("kneading_of_angle/15", |b| {
        b.iter(|| kneading_of_angle(black_box(&x)))
    });
    let k = kneading_of_angle(&x);
    c.bench_function("address_from_kneading/15", |b| {
        b.iter(|| address_from_kneading(black_box(&k)).unwrap())
    });
}

criterion_group!(benches, bench_enumerate, bench_kneading);
criterion_main!(benches);
