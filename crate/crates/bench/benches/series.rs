use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use aperylift_core::apery::Variant;
use aperylift_core::reference::reference_zeta;
use aperylift_core::series::{power_series_eval, zeta3_accel, PowerSeriesSpec};

fn accelerated(c: &mut Criterion) {
    let mut g = c.benchmark_group("zeta3_accel");
    for terms in [5, 25, 100] {
        g.bench_with_input(BenchmarkId::from_parameter(terms), &terms, |b, &t| b.iter(|| zeta3_accel(t).unwrap()));
    }
    g.finish();
}

fn powers(c: &mut Criterion) {
    let mut g = c.benchmark_group("power_series");
    for m in 2..=5 {
        let spec = PowerSeriesSpec::builtin(Variant::Zeta3, m).unwrap();
        g.bench_with_input(BenchmarkId::new("zeta3", m), &spec, |b, s| b.iter(|| power_series_eval(s, 25).unwrap()));
    }
    g.finish();
}

fn reference(c: &mut Criterion) {
    let mut g = c.benchmark_group("reference");
    g.sample_size(10);
    g.bench_function("zeta3/60", |b| b.iter(|| reference_zeta(3, 60).unwrap()));
    g.finish();
}

criterion_group!(benches, accelerated, powers, reference);
criterion_main!(benches);
