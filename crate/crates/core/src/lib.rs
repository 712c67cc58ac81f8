//! Exact construction and certification of rational scrolls with isolated
//! singularities in `P^5`, the cubic fourfolds that contain them, and the
//! dimension counts around the associated Hilbert schemes.

pub mod algebra;
pub mod construct;
pub mod cubic;
pub mod dims;
pub mod error;
pub mod groebner;
pub mod reference;
pub mod scroll;

pub use error::{Error, Result};

/// Deterministic proptest configuration shared by the unit tests.
#[cfg(test)]
pub(crate) fn proptest_config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_algorithm: proptest::test_runner::RngAlgorithm::ChaCha,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x5c01_1f00),
        failure_persistence: None,
        ..Default::default()
    }
}
