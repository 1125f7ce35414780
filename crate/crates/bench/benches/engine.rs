use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use ybkoszul::beerkit::{algorithm_reduce, build_beer};
use ybkoszul::exactla::FieldTag;
use ybkoszul::morphcheck::{check_map, MapKind};
use ybkoszul::reflgroups::GroupSpec;
use ybkoszul::rewrite::{MonomialOrder, OrderSpec, RewritingSystem};

fn spec(s: &str) -> GroupSpec {
    s.parse().unwrap()
}

fn build(c: &mut Criterion) {
    for s in ["D:4", "B:4"] {
        let g = spec(s);
        c.bench_function(&format!("build_beer {s}"), |b| b.iter(|| build_beer(black_box(&g)).unwrap()));
    }
}

fn hilbert(c: &mut Criterion) {
    let b3 = build_beer(&spec("B:3")).unwrap();
    c.bench_function("hilbert B:3 degree 4", |b| b.iter(|| b3.algebra.hilbert(4, FieldTag::Rational).unwrap()));
    let d4 = build_beer(&spec("D:4")).unwrap();
    c.bench_function("dual hilbert D:4 degree 4", |b| b.iter(|| d4.dual().hilbert(4, FieldTag::Rational).unwrap()));
}

fn rewriting(c: &mut Criterion) {
    let g = spec("D:4");
    let d4 = build_beer(&g).unwrap();
    let order = MonomialOrder::new(&OrderSpec::default_for(&g), d4.dual().generators()).unwrap();
    let rs = RewritingSystem::build(d4.dual(), &order).unwrap();
    c.bench_function("pbw overlaps D:4", |b| b.iter(|| rs.pbw_confluent().unwrap()));
    let labels = d4.dual().generators().to_vec();
    c.bench_function("algorithm_reduce D:4 all degree 3", |b| {
        b.iter(|| {
            for x in &labels {
                for y in &labels {
                    for z in &labels {
                        black_box(algorithm_reduce(&g, &[*x, *y, *z]).unwrap());
                    }
                }
            }
        })
    });
}

fn morphisms(c: &mut Criterion) {
    c.bench_function("check_map AtoD:4", |b| b.iter(|| check_map(MapKind::AtoD(4)).unwrap()));
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = build, hilbert, rewriting, morphisms
}
criterion_main!(benches);
