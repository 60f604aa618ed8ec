use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use reidemeister_bench::{corpus_code, corpus_diagram, search_options, SIZES};
use reidemeister_core::{closure, compute_extra, enumerate_moves, realize};
use std::hint::black_box;

fn realization(c: &mut Criterion) {
    let mut g = c.benchmark_group("realize");
    for name in SIZES {
        let code = corpus_code(name);
        g.bench_with_input(BenchmarkId::from_parameter(name), &code, |b, code| {
            b.iter(|| realize(black_box(code)).unwrap())
        });
    }
    g.finish();
}

fn canonical(c: &mut Criterion) {
    let mut g = c.benchmark_group("canonical_code");
    for name in SIZES {
        let d = corpus_diagram(name);
        g.bench_with_input(BenchmarkId::from_parameter(name), &d, |b, d| {
            b.iter(|| black_box(d).canonical_code())
        });
    }
    g.finish();
}

fn moves(c: &mut Criterion) {
    let mut g = c.benchmark_group("enumerate_moves");
    for name in SIZES {
        let d = corpus_diagram(name);
        let cap = d.crossing_count() + 2;
        g.bench_with_input(BenchmarkId::from_parameter(name), &d, |b, d| {
            b.iter(|| enumerate_moves(black_box(d), cap))
        });
    }
    g.finish();
}

fn search(c: &mut Criterion) {
    let mut g = c.benchmark_group("search");
    g.sample_size(10);
    let culprit = corpus_diagram("Culprit");
    g.bench_function("closure Culprit cap 10", |b| {
        b.iter(|| closure(black_box(&culprit), 10, &search_options()).unwrap())
    });
    let h = corpus_diagram("H");
    g.bench_function("compute_extra H", |b| {
        b.iter(|| compute_extra(black_box(&h), None, &search_options()).unwrap())
    });
    g.finish();
}

criterion_group!(benches, realization, canonical, moves, search);
criterion_main!(benches);
