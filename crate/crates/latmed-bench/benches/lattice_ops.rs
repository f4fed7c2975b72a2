use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use latmed_core::{breadth, build_lnk, check_c1_property, enumerate_lattices, median_set, Profile};

fn bench_build(c: &mut Criterion) {
    c.bench_function("build lnk(4,3)", |b| {
        b.iter(|| build_lnk(4, 3).unwrap().lattice().n())
    });
    c.bench_function("build lnk(4,4)", |b| {
        b.iter(|| build_lnk(4, 4).unwrap().lattice().n())
    });
}

fn bench_median(c: &mut Criterion) {
    let lnk = build_lnk(4, 3).unwrap();
    let profile = Profile::new(lnk.profile.clone(), lnk.lattice()).unwrap();
    c.bench_function("median_set lnk(4,3)", |b| {
        b.iter(|| median_set(lnk.lattice(), &profile).min_remoteness)
    });
    c.bench_function("c1 scan figure-sized, k<=2", |b| {
        let pool = enumerate_lattices(7).unwrap();
        b.iter_batched(
            || pool.clone(),
            |pool| {
                pool.iter()
                    .filter(|l| check_c1_property(l, 2).holds())
                    .count()
            },
            BatchSize::SmallInput,
        )
    });
}

fn bench_breadth(c: &mut Criterion) {
    let lnk = build_lnk(4, 3).unwrap();
    c.bench_function("breadth lnk(4,3)", |b| b.iter(|| breadth(lnk.lattice())));
}

fn bench_enumerate(c: &mut Criterion) {
    c.bench_function("enumerate n=7", |b| {
        b.iter(|| enumerate_lattices(7).unwrap().len())
    });
}

criterion_group!(
    benches,
    bench_build,
    bench_median,
    bench_breadth,
    bench_enumerate
);
criterion_main!(benches);
