use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use opsusp_core::barres::{build_bar, group_homology, Coefficients, DEFAULT_BASIS_CAP};
use opsusp_core::chaincore::homology;
use opsusp_core::coalg::{check_coalgebra, make_interval, IntervalLift};
use opsusp_core::operad::{check_axioms, BarOperad, Operad};
use opsusp_core::suspops::make_v;
use opsusp_core::{tmap, CompositionShape, Permutation};

fn symmetric(c: &mut Criterion) {
    let shape = CompositionShape::new(vec![2, 1, 3]);
    let sigma = Permutation::new(vec![3, 1, 2]).unwrap();
    c.bench_function("tmap_2_1_3", |b| b.iter(|| tmap(black_box(&shape), black_box(&sigma)).unwrap()));
}

fn resolution(c: &mut Criterion) {
    let mut g = c.benchmark_group("bar_resolution");
    for (n, d) in [(2usize, 6i64), (3, 3)] {
        g.bench_with_input(BenchmarkId::new("build", format!("S{n}_d{d}")), &(n, d), |b, &(n, d)| {
            b.iter(|| build_bar(n, d, DEFAULT_BASIS_CAP).unwrap())
        });
    }
    let res = build_bar(3, 4, DEFAULT_BASIS_CAP).unwrap();
    g.bench_function("acyclic_S3_d3", |b| b.iter(|| homology(&res.complex, 0, 3).unwrap()));
    let res = build_bar(2, 6, DEFAULT_BASIS_CAP).unwrap();
    g.bench_function("group_homology_S2", |b| b.iter(|| group_homology(&res, Coefficients::Trivial, 0, 5).unwrap()));
    g.finish();
}

fn operads(c: &mut Criterion) {
    let mut g = c.benchmark_group("bar_operad");
    g.sample_size(10);
    let bar = BarOperad::new(3, 3).unwrap();
    let a = bar.parse("123*[213|132]").unwrap();
    let b = bar.parse("12*[21]").unwrap();
    g.bench_function("compose_deg2_deg1", |bn| bn.iter(|| bar.compose(black_box(&a), 2, black_box(&b)).unwrap()));
    let small = BarOperad::new(3, 2).unwrap();
    g.bench_function("axioms_r3_d2", |bn| bn.iter(|| check_axioms(&small).unwrap()));
    g.finish();
}

fn coalgebras(c: &mut Criterion) {
    let mut g = c.benchmark_group("coalgebra");
    g.sample_size(10);
    let bar = BarOperad::new(3, 2).unwrap();
    g.bench_function("interval_r3_d2", |b| b.iter(|| make_interval(bar.clone(), IntervalLift::ToP0).unwrap()));
    let i = make_interval(bar.clone(), IntervalLift::ToP0).unwrap();
    g.bench_function("check_interval_r3_d2", |b| b.iter(|| check_coalgebra(&i.base).unwrap()));
    g.bench_function("v_r3_d2", |b| b.iter(|| make_v(bar.clone(), IntervalLift::ToP0).unwrap()));
    g.finish();
}

criterion_group!(benches, symmetric, resolution, operads, coalgebras);
criterion_main!(benches);
