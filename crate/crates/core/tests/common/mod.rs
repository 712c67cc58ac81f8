#![allow(dead_code)]

use proptest::test_runner::{Config, RngAlgorithm, RngSeed};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use scrollsmith::algebra::{ExactMatrix, Fp};
use scrollsmith::scroll::{ProjectionMatrix, ScrollSpec};

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_algorithm: RngAlgorithm::ChaCha,
        rng_seed: RngSeed::Fixed(0x5c01_1f00),
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn random_matrix(p: u32, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> ExactMatrix<Fp> {
    let data = (0..rows)
        .map(|_| (0..cols).map(|_| Fp::new(rng.gen_range(0..p as i64), p)).collect())
        .collect();
    ExactMatrix::from_rows(p, data).unwrap()
}

/// A uniformly random projection of full rank.
pub fn random_projection(spec: ScrollSpec, p: u32, rng: &mut ChaCha8Rng) -> ProjectionMatrix<Fp> {
    loop {
        let pm = ProjectionMatrix::new(spec, random_matrix(p, spec.source_dim(), spec.target_dim(), rng)).unwrap();
        if pm.rank() == spec.target_dim() {
            return pm;
        }
    }
}

pub fn random_invertible(p: u32, n: usize, rng: &mut ChaCha8Rng) -> ExactMatrix<Fp> {
    loop {
        let g = random_matrix(p, n, n, rng);
        if g.rank() == n {
            return g;
        }
    }
}
