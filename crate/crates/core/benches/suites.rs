use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use domaincheck_core::corpus::{self, generate_all_posets};
use domaincheck_core::suites::{run_suite, Params};
use domaincheck_core::topology::glim_topology_naive;
use domaincheck_core::{Exec, FiniteDomain};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn glim(c: &mut Criterion) {
    let mut g = c.benchmark_group("glim_naive");
    let posets = [
        corpus::cube(),
        corpus::m3(),
        generate_all_posets(5).unwrap().swap_remove(20),
    ];
    for p in posets {
        let d = FiniteDomain::new(p).unwrap();
        for (name, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(name, d.name()), &d, |b, d| {
                b.iter(|| glim_topology_naive(black_box(d), 4, exec).unwrap())
            });
        }
    }
    g.finish();
}

fn suites(c: &mut Criterion) {
    let mut g = c.benchmark_group("suite");
    g.sample_size(10);
    for suite in ["prop4", "thm1", "collapse"] {
        for (name, exec) in MODES {
            let params = Params {
                max_size: 4,
                seed: 0,
                exec,
                samples: 200,
            };
            g.bench_with_input(BenchmarkId::new(name, suite), &params, |b, &p| {
                b.iter(|| run_suite(suite, p).unwrap())
            });
        }
    }
    g.finish();
}

criterion_group!(benches, glim, suites);
criterion_main!(benches);
