//! Shared fixtures for the benchmarks.

use cqmix::sampling::Sampler;
use cqmix::weakfield::{TestParticle, WeakFieldConfig};
use cqmix::MultiVector;

pub fn multivectors(n: usize, seed: u64) -> Vec<MultiVector> {
    let mut s = Sampler::new(seed);
    (0..n).map(|_| s.multivector()).collect()
}

/// Uniform magnetic field along z with a particle on a small circular orbit.
pub fn cyclotron() -> (WeakFieldConfig, TestParticle) {
    let cfg = WeakFieldConfig::new(1e-4)
        .expect("valid coupling")
        .with_vector_potential(|p| [0.5 * p[2], -0.5 * p[1], 0.0]);
    let p = TestParticle::new(1.0, 1.0, [0.0; 4], [0.1, 0.0, 0.0]).expect("valid particle");
    (cfg, p)
}
