//! Seeded sampling of rational points, algebra elements and low-degree test
//! fields. Identical seeds give identical samples on every platform.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebroid::{OneForm, VectorField};
use crate::poly::{int, Monomial, MultiPoly, Rational};

pub type SampleRng = ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 20180117;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Bounds for sampled coordinates: numerators in `[-num_bound, num_bound]`,
/// denominators in `[1, den_bound]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SamplingBounds {
    pub num_bound: i64,
    pub den_bound: i64,
}

impl Default for SamplingBounds {
    fn default() -> Self {
        SamplingBounds { num_bound: 9, den_bound: 9 }
    }
}

pub fn random_rational(rng: &mut SampleRng, bounds: SamplingBounds) -> Rational {
    let n = rng.gen_range(-bounds.num_bound..=bounds.num_bound);
    let d = rng.gen_range(1..=bounds.den_bound);
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn random_point(rng: &mut SampleRng, n: usize, bounds: SamplingBounds) -> Vec<Rational> {
    (0..n).map(|_| random_rational(rng, bounds)).collect()
}

/// Small nonzero integer in `[-bound, bound]`.
fn nonzero_int(rng: &mut SampleRng, bound: i64) -> Rational {
    loop {
        let v = rng.gen_range(-bound..=bound);
        if v != 0 {
            return int(v);
        }
    }
}

/// All exponent vectors of total degree at most `degree` in `n` variables,
/// in lexicographic order.
pub fn monomials_up_to(n: usize, degree: u32) -> Vec<Monomial> {
    fn rec(n: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for k in 0..=left {
            prefix.push(k);
            rec(n, left - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, degree, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// Sparse random polynomial: `terms` distinct monomials of degree at most
/// `degree`, nonzero integer coefficients in `[-3, 3]`.
pub fn random_poly(rng: &mut SampleRng, n: usize, degree: u32, terms: usize) -> MultiPoly {
    let monos = monomials_up_to(n, degree);
    let picks: Vec<&Monomial> = monos.choose_multiple(rng, terms.min(monos.len())).collect();
    let mut picks: Vec<Monomial> = picks.into_iter().cloned().collect();
    picks.sort();
    MultiPoly::from_terms(n, picks.into_iter().map(|e| (nonzero_int(rng, 3), e))).expect("exponent length")
}

/// Random vector field with two-term components of degree at most `degree`.
pub fn random_vector_field(rng: &mut SampleRng, n: usize, degree: u32) -> VectorField<MultiPoly> {
    VectorField::new((0..n).map(|_| random_poly(rng, n, degree, 2)).collect())
}

pub fn random_one_form(rng: &mut SampleRng, n: usize, degree: u32) -> OneForm<MultiPoly> {
    OneForm::new((0..n).map(|_| random_poly(rng, n, degree, 2)).collect())
}

/// Random algebra element with small integer coordinates.
pub fn random_element(rng: &mut SampleRng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| int(rng.gen_range(-9..=9))).collect()
}
