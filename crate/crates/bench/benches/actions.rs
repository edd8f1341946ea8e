use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use grigorchuk_core::full_group::{reconstruct_from_stabilizer, window_oracle};
use grigorchuk_core::gray::{phi, psi};
use grigorchuk_core::jump::{generator_permutations, table1};
use grigorchuk_core::sft::{periodic_points, sft_approximation};
use grigorchuk_core::tree::act_word;
use grigorchuk_core::{build_w, language_contains, BitString, GroupWord, Window};

fn tree_action(c: &mut Criterion) {
    let w: GroupWord = "abacabadacab".parse().unwrap();
    let v = BitString::new(0b1011_0110_1101_0011, 16).unwrap();
    c.bench_function("tree act_word depth 16", |b| {
        b.iter(|| act_word(black_box(&w), black_box(v)))
    });
}

fn jump_action(c: &mut Criterion) {
    let mut g = c.benchmark_group("generator permutations");
    for n in [8u32, 12, 16] {
        let w = build_w(n).unwrap();
        g.bench_with_input(BenchmarkId::from_parameter(n), &w, |b, w| {
            b.iter(|| generator_permutations(black_box(w)))
        });
    }
    g.finish();
}

fn relation_table(c: &mut Criterion) {
    c.bench_function("table1 6x50 t=6", |b| b.iter(|| table1(6, 50, 6).unwrap()));
}

fn gray(c: &mut Criterion) {
    c.bench_function("phi_16", |b| b.iter(|| phi(black_box(16)).unwrap()));
    let w = build_w(12).unwrap();
    let x = Window::new(w.letters()[1000..1256].to_vec(), 128).unwrap();
    c.bench_function("psi k=5 radius 128", |b| {
        b.iter(|| psi(5, black_box(&x)).unwrap())
    });
}

fn language(c: &mut Criterion) {
    let w = build_w(10).unwrap();
    let u = &w.letters()[100..227];
    c.bench_function("language_contains len 127", |b| {
        b.iter(|| language_contains(black_box(u)).unwrap())
    });
}

fn stabilizer(c: &mut Criterion) {
    let w = build_w(14).unwrap();
    let x = Window::new(w.letters().to_vec(), 5001).unwrap();
    c.bench_function("reconstruct 32 letters", |b| {
        b.iter(|| reconstruct_from_stabilizer(window_oracle(black_box(&x)), 32).unwrap())
    });
}

fn sft(c: &mut Criterion) {
    let x = sft_approximation(32).unwrap();
    c.bench_function("periodic points order 32 p 8", |b| {
        b.iter(|| periodic_points(black_box(&x), 8).unwrap())
    });
    c.bench_function("sft approximation order 64", |b| {
        b.iter(|| sft_approximation(black_box(64)).unwrap())
    });
}

criterion_group!(
    benches,
    tree_action,
    jump_action,
    relation_table,
    gray,
    language,
    stabilizer,
    sft
);
criterion_main!(benches);
