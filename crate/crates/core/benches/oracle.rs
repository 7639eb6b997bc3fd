use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use eof_core::oracle::{eof_bruteforce, Execution, OracleConfig};
use eof_core::states::{lemma3_mc, mc_two_qubit, werner};
use eof_core::BipartiteDensity;

fn fixtures() -> Vec<(&'static str, BipartiteDensity)> {
    let c3 = [1.0 / 3f64.sqrt(); 3];
    vec![
        ("mc2", mc_two_qubit(0.3, 0.7).unwrap()),
        ("lemma3-d3", lemma3_mc(0.5, &c3, 2).unwrap()),
        ("werner-d2", werner(2, -0.5).unwrap()),
    ]
}

fn restarts(c: &mut Criterion) {
    let mut group = c.benchmark_group("eof_bruteforce");
    group.sample_size(10);
    for (name, rho) in fixtures() {
        for (label, execution) in [("serial", Execution::Serial), ("parallel", Execution::Parallel)] {
            let cfg = OracleConfig { restarts: 16, samples: 0, execution, ..OracleConfig::default() };
            group.bench_with_input(BenchmarkId::new(label, name), &rho, |b, rho| {
                b.iter(|| eof_bruteforce(black_box(rho), &cfg).unwrap().min_value)
            });
        }
    }
    group.finish();
}

criterion_group!(benches, restarts);
criterion_main!(benches);
