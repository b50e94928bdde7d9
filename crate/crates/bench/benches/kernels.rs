use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use mirabolic::extremal::{compute_dyn_twist, verify_extremal_annihilation};
use mirabolic::twist::compute_twist;
use mirabolic::uea::{verify_minor_family, Subalgebra};
use mirabolic::whittaker::symbolic_u;
use mirabolic::{Algebra, Element, Rep, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_element(r: &mut ChaCha8Rng, alg: Algebra, degree: usize) -> Element {
    let gens = alg.generators();
    let mut x = Element::zero(alg);
    for _ in 0..3 {
        let word: Vec<_> = (0..degree).map(|_| gens[r.gen_range(0..gens.len())]).collect();
        x = x.add(&Element::word(alg, &word).unwrap().scale(&Scalar::from_int(r.gen_range(1..=5)))).unwrap();
    }
    x
}

// rewriting rules are memoized process-wide, so these are warm-cache timings
fn pbw(c: &mut Criterion) {
    let alg = Algebra::gl(3);
    let mut r = ChaCha8Rng::seed_from_u64(1);
    let pairs: Vec<_> = (0..16).map(|_| (random_element(&mut r, alg, 3), random_element(&mut r, alg, 3))).collect();
    c.bench_function("pbw/product/gl3/degree3", |b| {
        b.iter(|| pairs.iter().map(|(x, y)| x.mul(y).unwrap()).count())
    });
}

fn minors(c: &mut Criterion) {
    let mut g = c.benchmark_group("minors");
    g.sample_size(10);
    for n in [2u8, 3] {
        g.bench_with_input(BenchmarkId::new("comatrix-product", n), &n, |b, &n| {
            b.iter(|| verify_minor_family("comatrix-product", n, 3).unwrap())
        });
    }
    g.finish();
}

fn twist(c: &mut Criterion) {
    let mut g = c.benchmark_group("twist");
    g.sample_size(10);
    for n in [2u8, 3] {
        let v = Rep::vector(n).restrict(Subalgebra::Mirabolic);
        let u = symbolic_u(n);
        g.bench_with_input(BenchmarkId::new("vector", n), &n, |b, _| b.iter(|| compute_twist(&v, &v, &u).unwrap()));
    }
    g.finish();
}

fn extremal(c: &mut Criterion) {
    let mut g = c.benchmark_group("extremal");
    g.sample_size(10);
    let v = Rep::vector(2);
    g.bench_function("dyn-twist/gl2", |b| b.iter(|| compute_dyn_twist(&v, &v).unwrap()));
    g.bench_function("annihilation/gl2/depth2", |b| b.iter(|| verify_extremal_annihilation(&v, 2).unwrap()));
    g.finish();
}

criterion_group!(benches, pbw, minors, twist, extremal);
criterion_main!(benches);
