//! Seeded random generation of field elements and maps, with rejection of
//! preperiodic draws where a wandering orbit is required. Property suites and
//! randomized acceptance checks all draw from here so runs are reproducible
//! from the seed alone.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dynamics::{detect_periodicity, OrbitVerdict, UnicriticalMap};
use crate::numfield::{FieldElement, NumberField};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// A nonzero rational with numerator and denominator bounded by `bound`.
    pub fn nonzero_rational(&mut self, bound: i64) -> BigRational {
        loop {
            let num = self.rng.gen_range(-bound..=bound);
            if num == 0 {
                continue;
            }
            let den = self.rng.gen_range(1..=bound);
            return BigRational::new(BigInt::from(num), BigInt::from(den));
        }
    }

    pub fn rational(&mut self, bound: i64) -> BigRational {
        let num = self.rng.gen_range(-bound..=bound);
        let den = self.rng.gen_range(1..=bound);
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    /// A nonzero element of K with bounded coordinates.
    pub fn nonzero_element(&mut self, field: &NumberField, bound: i64) -> FieldElement {
        loop {
            let x = if field.is_rational() {
                FieldElement::from_rational(self.rational(bound))
            } else {
                FieldElement::new(self.rational(bound), self.rational(bound))
            };
            if !x.is_zero() {
                return x;
            }
        }
    }

    /// An element of O_K with coordinates in [-bound, bound].
    pub fn integral_element(&mut self, field: &NumberField, bound: i64) -> FieldElement {
        let a = BigRational::from(BigInt::from(self.rng.gen_range(-bound..=bound)));
        let b = if field.is_rational() {
            BigRational::from(BigInt::from(0))
        } else {
            BigRational::from(BigInt::from(self.rng.gen_range(-bound..=bound)))
        };
        FieldElement::new(a, b)
    }

    /// A map with integral gamma, c of bounded height.
    pub fn map(&mut self, field: &NumberField, degree: u32, bound: i64) -> UnicriticalMap {
        loop {
            let gamma = self.integral_element(field, bound);
            let c = self.integral_element(field, bound);
            if c.is_zero() {
                continue;
            }
            if let Ok(f) = UnicriticalMap::new(*field, degree, gamma, c) {
                return f;
            }
        }
    }

    /// A (map, start) pair whose orbit is certified wandering; preperiodic and
    /// undecided draws are rejected.
    pub fn wandering_pair(
        &mut self,
        field: &NumberField,
        degree: u32,
        bound: i64,
    ) -> (UnicriticalMap, FieldElement) {
        loop {
            let f = self.map(field, degree, bound);
            let alpha = self.integral_element(field, bound);
            if let OrbitVerdict::Wandering { .. } = detect_periodicity(&f, &alpha, 64) {
                return (f, alpha);
            }
        }
    }

    /// A wandering pair for the critically centered family x^d + c.
    pub fn wandering_monic_pair(
        &mut self,
        field: &NumberField,
        degree: u32,
        bound: i64,
    ) -> (UnicriticalMap, FieldElement) {
        loop {
            let c = self.integral_element(field, bound);
            if c.is_zero() {
                continue;
            }
            let f = UnicriticalMap::new(*field, degree, FieldElement::zero(), c).unwrap();
            let alpha = self.integral_element(field, bound);
            if let OrbitVerdict::Wandering { .. } = detect_periodicity(&f, &alpha, 64) {
                return (f, alpha);
            }
        }
    }
}
