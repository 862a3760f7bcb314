//! Seeded random sampling. Complex components are drawn uniformly from the
//! unit square `[0, 1) × [0, 1)`.

use crate::algebra::MultiVector;
use crate::linalg::{Mat4, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn real(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    /// Uniform on `[lo, hi)`.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.real()
    }

    pub fn complex(&mut self) -> C64 {
        C64::new(self.real(), self.real())
    }

    pub fn multivector(&mut self) -> MultiVector {
        MultiVector::from_components([
            self.complex(),
            self.complex(),
            self.complex(),
            self.complex(),
        ])
    }

    pub fn real_multivector(&mut self) -> MultiVector {
        MultiVector::from_real([self.real(), self.real(), self.real(), self.real()])
    }

    pub fn vec3(&mut self, lo: f64, hi: f64) -> [f64; 3] {
        [
            self.uniform(lo, hi),
            self.uniform(lo, hi),
            self.uniform(lo, hi),
        ]
    }

    pub fn matrix(&mut self) -> Mat4 {
        let mut m = [[C64::new(0.0, 0.0); 4]; 4];
        for row in m.iter_mut() {
            for x in row.iter_mut() {
                *x = self.complex();
            }
        }
        m
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let mut a = Sampler::new(9);
        let mut b = Sampler::new(9);
        for _ in 0..10 {
            assert_eq!(a.complex(), b.complex());
        }
    }

    #[test]
    fn components_lie_in_unit_square() {
        let mut s = Sampler::new(1);
        for _ in 0..100 {
            let z = s.complex();
            assert!((0.0..1.0).contains(&z.re) && (0.0..1.0).contains(&z.im));
        }
    }
}
