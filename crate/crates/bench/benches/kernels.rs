//! Benchmarks for the three hot paths: exact row reduction, degree-by-degree
//! Hilbert functions, and the barrier solver on a published example.

use criterion::{criterion_group, criterion_main, Criterion};
use gramsos::analyze::{analyze, lmi_model};
use gramsos::gram::spectrahedron_from_sos;
use gramsos::ideals::{hf_poly, IdealGens};
use gramsos::matrix::RatMatrix;
use gramsos::poly::parse_poly;
use gramsos::rat;
use gramsos::registry::get;
use gramsos::sdp::{max_min_eig, SdpOptions};

fn seeded_matrix(rows: usize, cols: usize) -> RatMatrix {
    // small deterministic rationals, mixed signs and denominators
    RatMatrix::from_fn(rows, cols, |i, j| {
        let v = ((i * 31 + j * 17 + 7) % 19) as i64 - 9;
        rat(v, 1 + ((i + j) % 3) as i64)
    })
}

fn bench_rref(c: &mut Criterion) {
    let m = seeded_matrix(40, 60);
    c.bench_function("rref 40x60 rational", |b| b.iter(|| m.rref()));
}

fn bench_hilbert(c: &mut Criterion) {
    let gens = vec![
        parse_poly("x1^3 + x2^2*x3", 3).unwrap(),
        parse_poly("x2^3 - x1*x3^2", 3).unwrap(),
        parse_poly("x3^3 + x1*x2*x3", 3).unwrap(),
    ];
    let ideal = IdealGens::new(3, 3, gens).unwrap();
    c.bench_function("hilbert function (3,3) at socle", |b| {
        b.iter(|| hf_poly(&ideal, 6))
    });
}

fn bench_sdp(c: &mut Criterion) {
    let entry = get("reznick46").unwrap();
    let param = spectrahedron_from_sos(&entry.decomposition);
    let model = lmi_model(&param);
    let opts = SdpOptions::default();
    c.bench_function("max-min eigenvalue solve (4,6)", |b| {
        b.iter(|| max_min_eig(&model, &opts))
    });
    let mut group = c.benchmark_group("full-analysis");
    group.sample_size(10);
    group.bench_function("analyze reznick46", |b| {
        b.iter(|| analyze(&entry.decomposition, &opts, 4).unwrap())
    });
    group.finish();
}

criterion_group!(benches, bench_rref, bench_hilbert, bench_sdp);
criterion_main!(benches);
