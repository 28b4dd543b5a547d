use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use taut_bench::{presentation, CASES};
use taut_core::quotient::{invariant_hilbert, GradedQuotient};

fn build_presentation(c: &mut Criterion) {
    let mut g = c.benchmark_group("present");
    for (n, d) in CASES {
        g.bench_with_input(BenchmarkId::from_parameter(format!("{n},{d}")), &(n, d), |b, &(n, d)| {
            b.iter(|| presentation(n, d))
        });
    }
    g.finish();
}

fn slices(c: &mut Criterion) {
    let mut g = c.benchmark_group("slices");
    g.sample_size(10);
    for (n, d) in CASES {
        let pres = presentation(n, d);
        g.bench_with_input(BenchmarkId::from_parameter(format!("{n},{d}")), &pres, |b, pres| {
            b.iter(|| GradedQuotient::new(pres, pres.dim + 2).unwrap())
        });
    }
    g.finish();
}

fn invariants(c: &mut Criterion) {
    let mut g = c.benchmark_group("invariant_hilbert");
    g.sample_size(10);
    for (n, d) in CASES {
        let pres = presentation(n, d);
        let quot = GradedQuotient::new(&pres, pres.dim + 2).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(format!("{n},{d}")), &quot, |b, quot| {
            b.iter(|| invariant_hilbert(&pres, quot).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, build_presentation, slices, invariants);
criterion_main!(benches);
