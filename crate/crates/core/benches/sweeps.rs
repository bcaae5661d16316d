use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use seifert_core::lattice::{plumbing_form, theta_invariant_with};
use seifert_core::par::Execution;
use seifert_core::report::{Family, Report};
use seifert_core::verify::{run_suite, Suite, VerifyOptions};

fn modes() -> [(&'static str, Execution); 2] {
    [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)]
}

fn family_table(c: &mut Criterion) {
    let mut group = c.benchmark_group("family_table");
    group.sample_size(10);
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::new(name, "2,3,6k+1 k=1..20"), &exec, |b, &exec| {
            b.iter(|| Report::from_family(Family::SixKPlusOne, 1..=20, exec).unwrap())
        });
    }
    group.finish();
}

fn dedekind_oracle(c: &mut Criterion) {
    let mut group = c.benchmark_group("dedekind_oracle");
    group.sample_size(10);
    for (name, exec) in modes() {
        let opts = VerifyOptions {
            cases: 200,
            exec,
            ..VerifyOptions::default()
        };
        group.bench_with_input(BenchmarkId::new(name, 200), &opts, |b, opts| {
            b.iter(|| assert!(run_suite(Suite::DedekindOracle, opts).unwrap().passed()))
        });
    }
    group.finish();
}

fn theta(c: &mut Criterion) {
    let mut group = c.benchmark_group("theta");
    let q = plumbing_form(2, 3, 47).unwrap();
    for (name, exec) in modes() {
        group.bench_with_input(BenchmarkId::new(name, "2,3,47"), &exec, |b, &exec| {
            b.iter(|| theta_invariant_with(&q, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, family_table, dedekind_oracle, theta);
criterion_main!(benches);
