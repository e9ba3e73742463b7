//! Exhaustive-scan benchmarks, labeled by the compiled lane so the rayon and
//! sequential builds can be compared: run `cargo bench` once as-is and once
//! with `--no-default-features`.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use coalition_core::axioms::{check_multiset_order, check_relation};
use coalition_core::engine::find_dc_stable;
use coalition_core::games::{build_example61, WorthRelation};
use coalition_core::par::parallel_enabled;
use coalition_core::{Coalition, OrderKind, Partition, Rat};

fn lane() -> &'static str {
    if parallel_enabled() {
        "parallel"
    } else {
        "sequential"
    }
}

fn grid() -> Vec<Rat> {
    vec![Rat::zero(), Rat::new(1, 2), Rat::one(), Rat::from(2), Rat::from(3)]
}

fn target_relation() -> WorthRelation {
    let p = Partition::parse("1,2|3,4|5", Coalition::full(5)).unwrap();
    let game = build_example61(&p, OrderKind::Utilitarian).unwrap();
    WorthRelation::new(game, OrderKind::Utilitarian).unwrap()
}

fn bench_scans(c: &mut Criterion) {
    let mut group = c.benchmark_group(format!("scans/{}", lane()));
    group.sample_size(20);

    let g = grid();
    group.bench_function("multiset-axioms/leximin-grid5-size3", |b| {
        b.iter(|| check_multiset_order(OrderKind::Leximin, black_box(&g), 3).unwrap())
    });
    group.bench_function("multiset-axioms/average-grid5-size3", |b| {
        b.iter(|| check_multiset_order(OrderKind::Average, black_box(&g), 3).unwrap())
    });

    let rel = target_relation();
    group.bench_function("relation-axioms/utilitarian-n4", |b| {
        b.iter(|| check_relation(black_box(&rel), 4))
    });
    group.bench_function("stability-scan/utilitarian-n5", |b| {
        b.iter(|| find_dc_stable(black_box(&rel), 5).unwrap())
    });

    group.finish();
}

criterion_group!(benches, bench_scans);
criterion_main!(benches);
