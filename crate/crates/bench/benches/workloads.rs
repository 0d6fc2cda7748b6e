use alphacf_bench as w;
use criterion::{black_box, criterion_group, criterion_main, Criterion};

fn arithmetic(c: &mut Criterion) {
    c.bench_function("field products x64 (n=7)", |b| {
        b.iter(|| w::field_products(black_box(64)))
    });
}

fn dynamics(c: &mut Criterion) {
    for n in [3u64, 5] {
        c.bench_function(&format!("orbit 200 steps (n={n})"), |b| {
            b.iter(|| w::orbit_200(black_box(n)))
        });
    }
    c.bench_function("synchronization scan (n=3)", |b| b.iter(w::sync_scan));
}

fn intervals(c: &mut Criterion) {
    let mut g = c.benchmark_group("intervals");
    g.sample_size(10);
    for n in [3u64, 4] {
        g.bench_function(format!("endpoint table (n={n})"), |b| {
            b.iter(|| w::endpoint_table(black_box(n)))
        });
    }
    g.bench_function("coverage (10,5,4)", |b| b.iter(w::coverage_small));
    g.finish();
}

fn suites(c: &mut Criterion) {
    let mut g = c.benchmark_group("suites");
    g.sample_size(10);
    g.bench_function("identities reduced grid", |b| b.iter(w::identities_small));
    g.bench_function("word properties", |b| b.iter(w::words_small));
    g.finish();
}

criterion_group!(benches, arithmetic, dynamics, intervals, suites);
criterion_main!(benches);
