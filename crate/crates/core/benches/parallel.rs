use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use residua::catalog::load_corpus;
use residua::classes::GroupClass;
use residua::constants::{compute_beta, run_constants};
use residua::laws::closure_property_report;
use residua::selftest::{oracle_equivalence, verify_corpus};
use residua::{Caps, Context, Execution};

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

/// Fresh context per iteration so the oracle cache does not carry over.
fn fresh(exec: Execution) -> Context {
    Context::new(Caps::default(), exec).unwrap()
}

fn bench(c: &mut Criterion) {
    let base = fresh(Execution::Sequential);
    let corpus = load_corpus(&base.data_dir, &base.caps).unwrap();
    let (_, lg) = run_constants(&base, &GroupClass::parse("poly:nilpotent").unwrap()).unwrap();
    let nilpotent = GroupClass::Nilpotent;
    let poly = GroupClass::parse("poly:nilpotent").unwrap();
    let small: Vec<_> = corpus
        .iter()
        .filter(|g| g.group.order_u64().is_some_and(|o| o <= 200))
        .cloned()
        .collect();

    let mut g = c.benchmark_group("execution");
    g.sample_size(10)
        .measurement_time(Duration::from_secs(20))
        .warm_up_time(Duration::from_secs(1));
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::new("verify-corpus", name), &exec, |b, &e| {
            b.iter(|| verify_corpus(&fresh(e), &nilpotent, &corpus, &lg.gamma_cert).unwrap())
        });
        g.bench_with_input(
            BenchmarkId::new("oracle-equivalence", name),
            &exec,
            |b, &e| b.iter(|| oracle_equivalence(&fresh(e), &corpus, 200).unwrap()),
        );
        g.bench_with_input(BenchmarkId::new("beta-scan", name), &exec, |b, &e| {
            b.iter(|| compute_beta(&fresh(e), &poly, 5).unwrap())
        });
        g.bench_with_input(BenchmarkId::new("closure-laws", name), &exec, |b, &e| {
            b.iter(|| closure_property_report(&fresh(e), &nilpotent, &small).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
