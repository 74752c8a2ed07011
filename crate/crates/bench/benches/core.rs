use criterion::{black_box, criterion_group, criterion_main, Criterion};
use positroid_lab::amplituhedron::{chamber_of, realize_chamber};
use positroid_lab::cluster::{build_seed, check_adjacency};
use positroid_lab::exact::vandermonde_positive;
use positroid_lab::plabic::enumerate_subdivisions;
use positroid_lab::tilings::{compatibility_graph, count_tilings};
use positroid_lab::{ChamberSet, WPermutation};
use positroid_lab_bench::{positive_tables, two_polygon_tile};

fn exact(c: &mut Criterion) {
    let m = vandermonde_positive(7, 4).unwrap().transpose();
    c.bench_function("plucker_vector_4x7", |b| b.iter(|| black_box(&m).plucker_vector()));
}

fn combinatorics(c: &mut Criterion) {
    c.bench_function("enumerate_subdivisions_2_7", |b| b.iter(|| enumerate_subdivisions(black_box(2), 7).unwrap()));
    let s = two_polygon_tile();
    c.bench_function("trip_permutation_dual_tree_9", |b| b.iter(|| black_box(&s).dual_tree().trip_permutation().unwrap()));
    c.bench_function("check_adjacency_9", |b| b.iter(|| check_adjacency(black_box(&s))));
    let t = s.canonical_triangulation();
    c.bench_function("build_seed_9", |b| b.iter(|| build_seed(black_box(&t), None).unwrap()));
}

fn amplituhedron(c: &mut Criterion) {
    let tables = positive_tables(2, 7, 64, 1);
    c.bench_function("chamber_of_2_7_x64", |b| {
        b.iter(|| tables.iter().filter(|t| chamber_of(t).is_ok()).count())
    });
    let w = WPermutation::parse("2614537").unwrap();
    c.bench_function("realize_chamber_2614537", |b| b.iter(|| realize_chamber(black_box(&w)).unwrap()));
}

fn tilings(c: &mut Criterion) {
    let mut group = c.benchmark_group("tilings");
    group.sample_size(10);
    group.bench_function("compatibility_graph_2_7", |b| b.iter(|| compatibility_graph(2, 7).unwrap()));
    let g = compatibility_graph(2, 7).unwrap();
    let cover = ChamberSet::full(g.index.len());
    group.bench_function("count_tilings_2_7", |b| b.iter(|| count_tilings(&g, &cover)));
    group.finish();
}

criterion_group!(benches, exact, combinatorics, amplituhedron, tilings);
criterion_main!(benches);
