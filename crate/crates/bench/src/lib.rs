//! Shared fixtures for the benchmark targets.

use nsg_core::semigroup::{profile, validate_generators, GeneratorTuple, SemigroupProfile};

pub const TRIPLE: &[u64] = &[3, 5, 7];
pub const TELESCOPIC: &[u64] = &[8, 9, 10, 12];
pub const QUINTUPLE: &[u64] = &[19, 23, 29, 31, 37];

pub fn fixture(gens: &[u64]) -> (GeneratorTuple, SemigroupProfile) {
    let tuple = validate_generators(gens).expect("benchmark tuple is valid");
    let prof = profile(&tuple).expect("profile");
    (tuple, prof)
}
