//! Benchmarks for the hot kernels: exact inner products, GH verification,
//! KS construction and verification, assignment search, B-KS solving, the
//! classical brute force, and the Bell certificate.

use criterion::{criterion_group, criterion_main, Criterion};
use star_ks_bench::{gh18, kset_j11, kset_j49};
use star_ks_core::bell;
use star_ks_core::games::{self, BKSPair, Variant};
use star_ks_core::hadamard::{gh_to_shadamard, verify_gh};
use star_ks_core::ksets::{
    golden, ks_assignment_search, lisonek_construct, verify_bases, Pair, SearchBudget,
};

fn bench_inner_products(c: &mut Criterion) {
    let k = kset_j11();
    let labels: Vec<Pair> = k.vectors.keys().copied().collect();
    c.bench_function("inner_product/j11_all_pairs", |b| {
        b.iter(|| {
            let mut zeros = 0usize;
            for i in 0..labels.len() {
                for j in i + 1..labels.len() {
                    if k.vectors[&labels[i]]
                        .orthogonal_to(&k.vectors[&labels[j]])
                        .unwrap()
                    {
                        zeros += 1;
                    }
                }
            }
            zeros
        })
    });
}

fn bench_hadamard(c: &mut Criterion) {
    let m = gh18();
    c.bench_function("verify_gh/18x18", |b| b.iter(|| verify_gh(&m).is_pass()));
    let s = gh_to_shadamard(&m).unwrap();
    c.bench_function("lisonek_construct/n18", |b| {
        b.iter(|| lisonek_construct(&s).unwrap().vectors.len())
    });
}

fn bench_verification(c: &mut Criterion) {
    let k = kset_j11();
    c.bench_function("verify_bases/j11", |b| b.iter(|| verify_bases(&k).is_pass()));
    let big = kset_j49();
    c.bench_function("verify_bases/j49", |b| b.iter(|| verify_bases(&big).is_pass()));
}

fn bench_search(c: &mut Criterion) {
    let k = golden::table_j9();
    c.bench_function("ks_search/j9_proof_of_none", |b| {
        b.iter(|| ks_assignment_search(&k, false, SearchBudget::default()))
    });
    let j7 = golden::table_j7();
    let pair = BKSPair::from_removed(7, Pair::new(1, 2).unwrap(), Pair::new(3, 4).unwrap());
    c.bench_function("bks_solve/j7_disjoint_removals", |b| {
        b.iter(|| games::bks_solve(&j7, &pair).unwrap())
    });
}

fn bench_optima(c: &mut Criterion) {
    let game = games::StarGame::standard(Variant::Colored, 7).unwrap();
    c.bench_function("classical_optimum/colored_n7", |b| {
        b.iter(|| games::classical_optimum(&game, games::OptimumBudget::default()).unwrap())
    });
    let f = bell::build_functional(7).unwrap();
    c.bench_function("bell_certificate/n7", |b| {
        b.iter(|| bell::nontightness_certificate(&f, bell::CertificateBudget::default()))
    });
}

criterion_group!(
    benches,
    bench_inner_products,
    bench_hadamard,
    bench_verification,
    bench_search,
    bench_optima
);
criterion_main!(benches);
