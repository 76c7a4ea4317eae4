//! Seeded random weight vectors.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::scalar::FieldScalar;
use crate::verma::{ModuleVector, VermaModule};

/// Draws weight vectors with up to `max_factors` factors whose indices have
/// height at most `max_height`. Each vector is a combination of one to three
/// monomials sharing the same multiset of indices, split differently between
/// the I- and L-parts.
pub struct VectorSampler<'a> {
    module: &'a VermaModule,
    rng: ChaCha8Rng,
    positives: Vec<FieldScalar>,
    pub max_factors: usize,
}

impl<'a> VectorSampler<'a> {
    pub fn new(module: &'a VermaModule, seed: u64) -> Self {
        Self::with_limits(module, seed, 4, 3)
    }

    pub fn with_limits(module: &'a VermaModule, seed: u64, max_factors: usize, max_height: i64) -> Self {
        let group = module.group();
        let positives = group.elements_up_to_height(max_height).filter(|x| group.is_positive(x)).collect();
        VectorSampler { module, rng: ChaCha8Rng::seed_from_u64(seed), positives, max_factors }
    }

    fn coefficient(&mut self) -> FieldScalar {
        let mut num = 0;
        while num == 0 {
            num = self.rng.gen_range(-5..=5);
        }
        FieldScalar::from_ratio(num, self.rng.gen_range(1..=3))
    }

    /// A nonzero weight vector that is not a multiple of `v_h`.
    pub fn next_vector(&mut self) -> Result<ModuleVector> {
        loop {
            let factors = self.rng.gen_range(1..=self.max_factors);
            let entries: Vec<FieldScalar> =
                (0..factors).map(|_| self.positives.choose(&mut self.rng).expect("positives").clone()).collect();
            let mut v = ModuleVector::zero();
            for _ in 0..self.rng.gen_range(1..=3) {
                let (mut ps, mut js) = (Vec::new(), Vec::new());
                for e in &entries {
                    if self.rng.gen_bool(0.5) {
                        ps.push(e.clone());
                    } else {
                        js.push(e.clone());
                    }
                }
                let c = self.coefficient();
                v.add_term(self.module.monomial(ps, js)?, c);
            }
            if !v.is_zero() {
                return Ok(v);
            }
        }
    }
}
