//! Shared fixtures for the operator benchmarks: deterministic sample
//! chains at the scales the verification suite uses.

use cuntz_core::chains::Chain;
use cuntz_core::testkit::{rand_chain, rand_free_tensor, trial_rng, GenParams};
use cuntz_core::{CuntzMonomial, ElementaryTensor, FreeWord};

pub fn fixture_params() -> GenParams {
    GenParams {
        seed: 42,
        ..GenParams::default()
    }
}

/// A reproducible chain of the given degree built from the benchmark seed.
pub fn sample_chain(degree: usize, stream: u64) -> Chain<CuntzMonomial> {
    let p = fixture_params();
    rand_chain(&mut trial_rng(p.seed, stream), degree, &p)
}

/// A reproducible free elementary tensor of the given degree.
pub fn sample_free_tensor(degree: usize, stream: u64) -> ElementaryTensor<FreeWord> {
    let p = fixture_params();
    rand_free_tensor(&mut trial_rng(p.seed, stream), degree, &p)
}
