use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use instkit::adjunction::SearchLimits;
use instkit::proplogic::{check_logic_morphism, enumerate_formulas};
use instkit::{
    check_closure_laws, check_coherence, check_galois_laws, check_universal_property, f_object, g_object,
    identity_pi_comorphism, DEFAULT_CAP,
};
use instkit::{fixtures, generate};

fn closure_sweeps(c: &mut Criterion) {
    let corpus: Vec<_> = generate::institutions(1, 100)
        .iter()
        .map(|i| f_object(i).unwrap())
        .collect();
    c.bench_function("closure laws and coherence, 100 random", |b| {
        b.iter(|| {
            for j in &corpus {
                black_box(check_closure_laws(j, DEFAULT_CAP).unwrap());
                black_box(check_coherence(j, DEFAULT_CAP).unwrap());
            }
        })
    });
    let cpl1 = fixtures::cpl1_institution();
    c.bench_function("galois laws, cpl1", |b| {
        b.iter(|| check_galois_laws(black_box(&cpl1), "S0", DEFAULT_CAP).unwrap())
    });
}

fn g_objects(c: &mut Criterion) {
    let mut group = c.benchmark_group("G object");
    for (name, inst) in [
        ("twoval", fixtures::twoval()),
        ("rename", fixtures::rename()),
        ("cpl1", fixtures::cpl1_institution()),
    ] {
        let j = f_object(&inst).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(name), &j, |b, j| {
            b.iter(|| g_object(j, DEFAULT_CAP).unwrap())
        });
    }
    group.finish();
}

fn universal_property(c: &mut Criterion) {
    let limits = SearchLimits::default();
    for (name, inst) in [("twoval", fixtures::twoval()), ("cpl1", fixtures::cpl1_institution())] {
        let j = f_object(&inst).unwrap();
        let h = identity_pi_comorphism(&j);
        c.bench_function(&format!("universal property, {name}"), |b| {
            b.iter(|| check_universal_property(&h, &j, &inst, &limits).unwrap())
        });
    }
}

fn formulas(c: &mut Criterion) {
    let lo = fixtures::or_not(&["p"], 3);
    c.bench_function("enumerate or/not depth 3", |b| {
        b.iter(|| enumerate_formulas(black_box(&lo.signature), &lo.variables, 3).unwrap())
    });
    let (la, lo2) = (fixtures::and_not(&["p", "q"], 1), fixtures::or_not(&["p", "q"], 3));
    let dm = fixtures::de_morgan();
    c.bench_function("De Morgan logic morphism", |b| {
        b.iter(|| check_logic_morphism(&dm, &la, &lo2).unwrap())
    });
}

criterion_group!(benches, closure_sweeps, g_objects, universal_property, formulas);
criterion_main!(benches);
