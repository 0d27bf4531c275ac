use criterion::{black_box, criterion_group, criterion_main, Criterion};

use cuntz_bench::{sample_chain, sample_free_tensor};
use cuntz_core::chains::{boundary, cyclic_norm, Chain};
use cuntz_core::homotopy::{phi_apply, rho_long_cuntz, s_apply, SplitSpec};
use cuntz_core::parse::{parse_chain, Parsed};
use cuntz_core::semigroup::{cuntz_mul, CuntzMonomial, Word};

fn bench_boundary(c: &mut Criterion) {
    let x = sample_chain(3, 0);
    c.bench_function("boundary degree 3", |b| {
        b.iter(|| boundary(black_box(&x)).unwrap())
    });
}

fn bench_cyclic_norm(c: &mut Criterion) {
    let x = sample_chain(3, 1);
    c.bench_function("cyclic norm degree 3", |b| {
        b.iter(|| cyclic_norm(black_box(&x)))
    });
}

fn bench_cuntz_mul(c: &mut Criterion) {
    let a = CuntzMonomial::new(Word::from_indices(&[1, 2, 1]), Word::from_indices(&[2, 2]));
    let b2 = CuntzMonomial::new(Word::from_indices(&[2, 2, 1]), Word::from_indices(&[1]));
    c.bench_function("cuntz product", |b| {
        b.iter(|| cuntz_mul(black_box(&a), black_box(&b2)))
    });
}

fn bench_rho_long(c: &mut Criterion) {
    let a = CuntzMonomial::new(
        Word::from_indices(&[1, 2, 1, 3]),
        Word::from_indices(&[2, 2, 3]),
    );
    c.bench_function("long splitting", |b| {
        b.iter(|| rho_long_cuntz(black_box(&a)))
    });
}

fn bench_weighted_homotopy(c: &mut Criterion) {
    let spec = SplitSpec::long_free();
    let x = Chain::from_tensor(sample_free_tensor(2, 2));
    c.bench_function("weighted homotopy degree 2", |b| {
        b.iter(|| s_apply(black_box(&spec), black_box(&x)))
    });
}

fn bench_phi(c: &mut Criterion) {
    let x = sample_chain(2, 3);
    c.bench_function("phi degree 2", |b| {
        b.iter(|| phi_apply(black_box(&x)).unwrap())
    });
}

fn bench_parse_format(c: &mut Criterion) {
    let x = sample_chain(2, 4);
    let text = x.to_string();
    c.bench_function("parse and format degree 2", |b| {
        b.iter(|| {
            let reprinted = match parse_chain(black_box(&text), Some(2)).unwrap() {
                Parsed::Cuntz(c) => c.to_string(),
                Parsed::Free(c) => c.to_string(),
            };
            reprinted.len()
        })
    });
}

criterion_group!(
    benches,
    bench_boundary,
    bench_cyclic_norm,
    bench_cuntz_mul,
    bench_rho_long,
    bench_weighted_homotopy,
    bench_phi,
    bench_parse_format
);
criterion_main!(benches);
