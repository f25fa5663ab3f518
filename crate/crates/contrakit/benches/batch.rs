//! Parallel-versus-sequential comparison of the batch-heavy verification
//! workloads: Smith-oracle sweeps, torsion three-route agreement, and the
//! summation axiom trials.

use contrakit::batch;
use contrakit::fpmod::{smith, IntMatrix};
use contrakit::functors::{gamma_s_three_routes, RingElement};
use contrakit::mutation::Mutation;
use contrakit::verify::corpus::{random_fp_module, random_matrix};
use contrakit::verify::oracles::invariants_by_determinantal_divisors;
use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn matrices(n: usize) -> Vec<IntMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    (0..n).map(|_| random_matrix(&mut rng, 5, 30)).collect()
}

fn snf_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("snf_oracle_sweep");
    for &n in &[32usize, 128] {
        group.bench_function(format!("parallel/{n}"), |b| {
            b.iter_batched(
                || matrices(n),
                |ms| {
                    batch::run(ms, |m| {
                        let s = smith(&m);
                        let o = invariants_by_determinantal_divisors(&m);
                        (s.cokernel_rank() == o.0, s.invariant_factors() == o.1)
                    })
                },
                BatchSize::SmallInput,
            )
        });
        group.bench_function(format!("sequential/{n}"), |b| {
            b.iter_batched(
                || matrices(n),
                |ms| {
                    batch::run_sequential(ms, |m| {
                        let s = smith(&m);
                        let o = invariants_by_determinantal_divisors(&m);
                        (s.cokernel_rank() == o.0, s.invariant_factors() == o.1)
                    })
                },
                BatchSize::SmallInput,
            )
        });
    }
    group.finish();
}

fn gamma_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("gamma_three_route_sweep");
    let modules: Vec<_> = {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        (0..24).map(|_| random_fp_module(&mut rng)).collect()
    };
    group.bench_function("parallel", |b| {
        b.iter_batched(
            || modules.clone(),
            |ms| {
                batch::run(ms, |m| {
                    gamma_s_three_routes(&m, RingElement(6), Mutation::None).agree()
                })
            },
            BatchSize::SmallInput,
        )
    });
    group.bench_function("sequential", |b| {
        b.iter_batched(
            || modules.clone(),
            |ms| {
                batch::run_sequential(ms, |m| {
                    gamma_s_three_routes(&m, RingElement(6), Mutation::None).agree()
                })
            },
            BatchSize::SmallInput,
        )
    });
    group.finish();
}

criterion_group!(benches, snf_sweep, gamma_sweep);
criterion_main!(benches);
