use std::hint::black_box;

use avg_core::decide::implies_with;
use avg_core::findim::analysis::derived_series;
use avg_core::findim::lie::{induced_bracket, induced_by_averaging};
use avg_core::freeavg::{f_mode, mul_mode, normalize, Mode};
use avg_core::gen::{self, OperatorKind, PolyShape};
use avg_core::par::Execution;
use avg_core::terms::{parse_equation, Equation, IdentitySet};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EXECUTIONS: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

/// Claims of growing size: `f(v1 f(v2) ... f(vk))` against its expansion, and
/// the `k`-th Reynolds family member.
fn claim_batch(n: usize) -> Vec<Equation> {
    (0..n)
        .map(|i| {
            let k = 2 + i % 4;
            let src = if i % 2 == 0 {
                let inner: Vec<String> = (2..=k).map(|j| format!("f(v{j})")).collect();
                format!("f(v1*{}) = f(v1)*{}", inner.join("*"), inner.join("*"))
            } else {
                format!("{k}*f(v1*f(v1)^{}) = f(f(v1)^{k}) + {}*f(v1)^{k}", k - 1, k - 1)
            };
            parse_equation(&src).expect("well-formed claim")
        })
        .collect()
}

fn batch_decide(c: &mut Criterion) {
    let mut group = c.benchmark_group("batch_decide");
    group.sample_size(10);
    for n in [16, 64] {
        let claims = claim_batch(n);
        for (name, exec) in EXECUTIONS {
            group.bench_with_input(BenchmarkId::new(name, n), &claims, |b, claims| {
                b.iter(|| implies_with(exec, IdentitySet::ReynoldsAveraging, black_box(claims)))
            });
        }
    }
    group.finish();
}

fn law_holds(seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let shape = PolyShape::default();
    let (p, q) = (gen::random_free_poly(&mut rng, shape), gen::random_free_poly(&mut rng, shape));
    Mode::ALL.iter().all(|&m| {
        let (p, q) = (normalize(m, &p), normalize(m, &q));
        let fq = f_mode(m, &q);
        f_mode(m, &mul_mode(m, &p, &fq)) == mul_mode(m, &f_mode(m, &p), &fq)
    })
}

fn law_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("law_sweep");
    group.sample_size(10);
    for n in [100, 500] {
        for (name, exec) in EXECUTIONS {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| exec.map_range(n, |i| law_holds(i as u64)))
            });
        }
    }
    group.finish();
}

fn instance_holds(seed: u64) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (a, f) = gen::random_averaging_algebra(&mut rng, 4, OperatorKind::Averaging);
    let l = induced_bracket(&a, &f).expect("averaging");
    let solvable = derived_series(&a, &l).zero_at().is_some();
    let (a2, l2) = gen::random_dim2_bracket(&mut rng);
    solvable && induced_by_averaging(&a2, &l2).is_ok()
}

fn instance_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("instance_sweep");
    group.sample_size(10);
    for n in [50, 200] {
        for (name, exec) in EXECUTIONS {
            group.bench_with_input(BenchmarkId::new(name, n), &n, |b, &n| {
                b.iter(|| exec.map_range(n, |i| instance_holds(i as u64)))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, batch_decide, law_sweep, instance_sweep);
criterion_main!(benches);
