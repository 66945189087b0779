//! Seeded random elements for property checks.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::crossed::{CrossedElement, CrossedProduct};
use crate::nctorus::{Monomial, Torus, TorusElement};
use crate::scalar::{rat, Phase, PhasedScalar};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// A small rational times a twelfth root of unity times `e^{πi bθ}`, `b ∈ {-1, 0, 1}`.
    pub fn scalar(&mut self, torus: &Torus) -> PhasedScalar {
        let num = self.rng.gen_range(1..=3) * if self.rng.gen_bool(0.5) { 1 } else { -1 };
        let den = self.rng.gen_range(1..=2);
        let k = self.rng.gen_range(0..12);
        let b = self.rng.gen_range(-1..=1);
        let phase = Phase::root_of_unity(12, k).mul(&Phase::theta_power(rat(b, 1)));
        torus
            .scalar(&phase)
            .or_else(|_| torus.scalar(&Phase::theta_power(rat(b, 1))))
            .expect("theta phases exist in every field")
            .scale(&rat(num, den))
    }

    pub fn monomial(&mut self, dim: usize, degree: i64) -> Monomial {
        Monomial((0..dim).map(|_| self.rng.gen_range(-degree..=degree)).collect())
    }

    pub fn torus_element(&mut self, torus: &Torus, degree: i64, max_terms: usize) -> TorusElement {
        let mut x = TorusElement::zero(torus.dim());
        let terms = self.rng.gen_range(1..=max_terms.max(1));
        for _ in 0..terms {
            let m = self.monomial(torus.dim(), degree);
            let c = self.scalar(torus);
            x.add_term(m, c);
        }
        x
    }

    pub fn crossed_element(&mut self, cp: &CrossedProduct, degree: i64, max_terms: usize) -> CrossedElement {
        let mut x = cp.zero();
        let terms = self.rng.gen_range(1..=max_terms.max(1));
        for _ in 0..terms {
            let m = self.monomial(cp.dim(), degree);
            let k = self.rng.gen_range(0..cp.order() as i64);
            let c = self.scalar(cp.torus());
            x.add_term(m, k, c);
        }
        x
    }
}
