use criterion::{black_box, criterion_group, criterion_main, Criterion};

use bem_bench::reference_points;
use bem_core::bem::{fixed_points, tangent_weights};
use bem_core::clans::{enumerate_clans, Clan};
use bem_core::flags::{in_orbit_closure, random_flags};
use bem_core::polytope::{cone_contains_line, hull_summary, vertices};
use bem_core::weyl::Word;

fn bench_hull(c: &mut Criterion) {
    let mut group = c.benchmark_group("hull");
    for letters in [vec![2usize], vec![3, 2], vec![1, 2, 1]] {
        let points = reference_points(&letters);
        group.bench_function(format!("summary_{letters:?}"), |b| {
            b.iter(|| hull_summary(black_box(&points)).unwrap())
        });
        group.bench_function(format!("vertices_{letters:?}"), |b| {
            b.iter(|| vertices(black_box(&points)))
        });
    }
    group.finish();
}

fn bench_clans(c: &mut Criterion) {
    c.bench_function("enumerate_clans_3_3", |b| {
        b.iter(|| enumerate_clans(black_box(3), black_box(3)).unwrap())
    });
    let gamma: Clan = "1212".parse().unwrap();
    let pattern: Clan = "1212".parse().unwrap();
    let big: Clan = "1+2-3412+-34".parse().unwrap();
    c.bench_function("pattern_containment", |b| {
        b.iter(|| black_box(&big).contains_pattern(black_box(&pattern)))
    });
    let _ = gamma;
}

fn bench_membership(c: &mut Criterion) {
    let gamma: Clan = "1212".parse().unwrap();
    let flags = random_flags(4, 32, 99);
    c.bench_function("membership_batch_32", |b| {
        b.iter(|| {
            flags
                .iter()
                .filter(|f| in_orbit_closure(f, black_box(&gamma), true).unwrap())
                .count()
        })
    });
}

fn bench_weights(c: &mut Criterion) {
    let gamma = Clan::reference(2, 2);
    let word = Word::new(vec![3, 2, 3], 4).unwrap();
    let fps = fixed_points(&gamma, &word).unwrap();
    c.bench_function("tangent_cones_per_instance", |b| {
        b.iter(|| {
            fps.iter()
                .filter(|fp| {
                    let w = tangent_weights(&fp.x, &fp.subword, &word, 2, 2).unwrap();
                    !cone_contains_line(&w)
                })
                .count()
        })
    });
}

criterion_group!(benches, bench_hull, bench_clans, bench_membership, bench_weights);
criterion_main!(benches);
