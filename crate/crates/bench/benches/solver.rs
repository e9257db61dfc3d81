use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use defdom_bench::instance;
use defdom_core::graph::Family;
use defdom_core::heuristics::{clique_cover, initial_cuts, warm_start, CoverMethod};
use defdom_core::master::solve;
use defdom_core::separation::separate_multi;
use defdom_core::verify::is_k_defensive;
use defdom_core::{DefenderSet, SolveConfig};

fn separation(c: &mut Criterion) {
    let mut group = c.benchmark_group("separate_multi");
    for n in [50, 100] {
        let g = instance(Family::ErdosRenyi, n, 0.2, 1);
        // Every third vertex: sparse enough to leave many violators.
        let x = DefenderSet::from_vertices(n, (0..n).step_by(3));
        group.bench_with_input(BenchmarkId::from_parameter(n), &g, |b, g| {
            b.iter(|| separate_multi(g, black_box(&x), 2, 50_000, 50))
        });
    }
    group.finish();
}

fn verification(c: &mut Criterion) {
    let g = instance(Family::ErdosRenyi, 100, 0.2, 2);
    let cover = clique_cover(&g, CoverMethod::Auto).unwrap();
    let d = warm_start(&g, 3, &cover);
    c.bench_function("is_k_defensive n=100 k=3", |b| b.iter(|| is_k_defensive(&g, black_box(&d), 3)));
}

fn heuristics(c: &mut Criterion) {
    let mut group = c.benchmark_group("heuristics");
    let g = instance(Family::ErdosRenyi, 200, 0.5, 3);
    let cover = clique_cover(&g, CoverMethod::Auto).unwrap();
    group.bench_function("clique_cover n=200", |b| b.iter(|| clique_cover(black_box(&g), CoverMethod::Auto)));
    for k in [2, 5, 10] {
        group.bench_with_input(BenchmarkId::new("warm_start n=200", k), &k, |b, &k| {
            b.iter(|| warm_start(&g, k, black_box(&cover)))
        });
    }
    group.bench_function("initial_cuts n=200 k=2", |b| b.iter(|| initial_cuts(black_box(&g), 2)));
    group.finish();
}

fn small_solves(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve n=30 k=2");
    group.sample_size(10);
    let g = instance(Family::ErdosRenyi, 30, 0.5, 4);
    let base = SolveConfig::new(2);
    for (name, cfg) in [
        ("bbc", base.clone().with_mode(defdom_core::Mode::BbcSingle)),
        ("bbmc", base.clone()),
        ("bbmc++", base.clone().with_enhancements(true, true)),
        ("iterative", base.clone().with_mode(defdom_core::Mode::Iterative)),
    ] {
        group.bench_function(name, |b| b.iter(|| solve(black_box(&g), &cfg).unwrap()));
    }
    group.finish();
}

criterion_group!(benches, separation, verification, heuristics, small_solves);
criterion_main!(benches);
