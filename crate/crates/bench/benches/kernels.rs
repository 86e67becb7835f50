use std::hint::black_box;

use convsemi::bialgebra::fixtures;
use convsemi::convolution::{convolve, exp_conv};
use convsemi::semigroup::{associated_semigroup, is_completely_positive};
use convsemi::{function_bialgebra, group_cstar_bialgebra, sampling, Bialgebra};
use criterion::{criterion_group, criterion_main, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fixtures() -> Vec<(&'static str, Bialgebra)> {
    let (z8, _) = fixtures::cyclic(8);
    let (s3, s3_irr) = fixtures::s3();
    let (q8, q8_irr) = fixtures::q8();
    vec![
        ("C(Z8)", function_bialgebra(&z8)),
        ("C*(S3)", group_cstar_bialgebra(&s3, &s3_irr).unwrap()),
        ("C(Q8)", function_bialgebra(&q8)),
        ("C*(Q8)", group_cstar_bialgebra(&q8, &q8_irr).unwrap()),
    ]
}

fn kernels(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for (name, b) in fixtures() {
        let l = sampling::random_functional(b.algebra(), &mut rng);
        let m = sampling::random_functional(b.algebra(), &mut rng);
        let gamma = sampling::random_generating_functional(&b, &mut rng).unwrap();
        let pt = associated_semigroup(&b, &gamma).unwrap().at(1.0, 0.0).unwrap();

        c.bench_function(&format!("convolve/{name}"), |bn| {
            bn.iter(|| convolve(&b, black_box(&l), black_box(&m)).unwrap())
        });
        c.bench_function(&format!("exp_conv/{name}"), |bn| {
            bn.iter(|| exp_conv(&b, black_box(&gamma), 1.0, 0.0).unwrap())
        });
        c.bench_function(&format!("validate/{name}"), |bn| {
            bn.iter(|| black_box(&b).validate(1e-10))
        });
        c.bench_function(&format!("choi/{name}"), |bn| {
            bn.iter(|| is_completely_positive(black_box(&pt), 1e-9))
        });
    }
}

criterion_group!(benches, kernels);
criterion_main!(benches);
