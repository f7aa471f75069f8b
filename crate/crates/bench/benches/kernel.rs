use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion, Throughput};
use stagwalk::{run_search, MarkedSet, Parity, StopRule, WalkParams};
use stagwalk_bench::Workload;

fn half_step(c: &mut Criterion) {
    let mut group = c.benchmark_group("half_step");
    for &(d, side) in &[(3, 32), (4, 16), (5, 16), (7, 8)] {
        let mut w = Workload::new(d, side, std::f64::consts::FRAC_1_SQRT_2, 3);
        group.throughput(Throughput::Elements(w.cfg.volume() as u64));
        group.bench_function(BenchmarkId::from_parameter(w.label()), |b| {
            b.iter(|| w.walk.half_step(&mut w.field, Parity::Even))
        });
    }
    group.finish();
}

fn search(c: &mut Criterion) {
    let mut group = c.benchmark_group("search");
    group.sample_size(10);
    let w = Workload::new(3, 32, 0.7015, 3);
    let params = WalkParams::new(0.7015, 3).unwrap();
    let marked = MarkedSet::single(&w.cfg, 0).unwrap();
    group.bench_function("d3_L32_to_first_peak", |b| {
        b.iter(|| {
            run_search(
                &w.cfg,
                &params,
                &marked,
                StopRule::FirstPeak { max_queries: 600 },
            )
            .unwrap()
        })
    });
    group.finish();
}

criterion_group!(benches, half_step, search);
criterion_main!(benches);
