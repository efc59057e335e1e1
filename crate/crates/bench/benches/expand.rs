use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use detdecomp_bench::{decompositions, sample_matrix, FIELDS};
use detdecomp_core::evaluate::det_oracle;
use detdecomp_core::verify::expand_parallel;
use detdecomp_core::{eval_decomposition, expand, expand_poly, to_chow, FieldSpec};

fn bench_expand(c: &mut Criterion) {
    let mut group = c.benchmark_group("expand");
    group.sample_size(10);
    for field in FIELDS {
        for n in [4, 5, 6] {
            for (label, d) in decompositions(n, field) {
                let id = BenchmarkId::new(format!("{label}/{field}"), n);
                group.bench_with_input(id, &d, |b, d| b.iter(|| expand(black_box(d))));
            }
        }
    }
    let d = detdecomp_core::best_known(7, FieldSpec::Rationals).unwrap();
    for jobs in [1, 4] {
        group.bench_with_input(BenchmarkId::new("best7/jobs", jobs), &jobs, |b, &jobs| {
            b.iter(|| expand_parallel(black_box(&d), jobs))
        });
    }
    group.finish();
}

fn bench_eval(c: &mut Criterion) {
    let mut group = c.benchmark_group("eval");
    for field in FIELDS {
        for n in [4, 6] {
            let a = sample_matrix(n, field);
            for (label, d) in decompositions(n, field) {
                let id = BenchmarkId::new(format!("{label}/{field}"), n);
                group.bench_with_input(id, &d, |b, d| b.iter(|| eval_decomposition(black_box(d), &a)));
            }
            group.bench_function(BenchmarkId::new(format!("oracle/{field}"), n), |b| {
                b.iter(|| det_oracle(black_box(&a)))
            });
        }
    }
    group.finish();
}

fn bench_chow(c: &mut Criterion) {
    let mut group = c.benchmark_group("chow");
    group.sample_size(10);
    for n in [4, 5, 6] {
        let chow = to_chow(&detdecomp_core::best_known(n, FieldSpec::Rationals).unwrap());
        group.bench_with_input(BenchmarkId::from_parameter(n), &chow, |b, chow| {
            b.iter(|| expand_poly(black_box(chow)))
        });
    }
    group.finish();
}

criterion_group!(benches, bench_expand, bench_eval, bench_chow);
criterion_main!(benches);
