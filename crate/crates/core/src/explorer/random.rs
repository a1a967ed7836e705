//! Seeded random forms. Every draw comes from a `ChaCha8Rng` whose seed and
//! stream are fixed by the caller, so results do not depend on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ring::{monomials_of_degree, Coeff, FieldSpec, Polynomial, Ring};

pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform residue for a prime field, an integer in `[-height, height]`
/// over ℚ.
pub fn random_coeff(rng: &mut ChaCha8Rng, field: FieldSpec, height: i64) -> Coeff {
    match field {
        FieldSpec::Prime(p) => field.from_i64(rng.gen_range(0..p as i64)),
        FieldSpec::Rationals => field.from_i64(rng.gen_range(-height..=height)),
    }
}

/// A homogeneous form of the given (weighted) degree. With `max_terms`,
/// at most that many monomials are drawn (with repetition); otherwise every
/// monomial gets a random coefficient. The result may be zero.
pub fn random_form(ring: &Ring, degree: u64, rng: &mut ChaCha8Rng, height: i64, max_terms: Option<usize>) -> Polynomial {
    let monos = monomials_of_degree(ring.num_vars(), degree, ring.weights());
    if monos.is_empty() {
        return Polynomial::zero(ring);
    }
    let field = ring.field();
    let terms: Vec<_> = match max_terms {
        None => monos
            .iter()
            .map(|m| (random_coeff(rng, field, height), m.clone()))
            .collect(),
        Some(k) => {
            let count = rng.gen_range(1..=k.max(1));
            (0..count)
                .map(|_| {
                    let m = monos[rng.gen_range(0..monos.len())].clone();
                    (random_coeff(rng, field, height), m)
                })
                .collect()
        }
    };
    Polynomial::from_terms(ring, terms)
}

/// Like [`random_form`] but never zero.
pub fn random_nonzero_form(
    ring: &Ring,
    degree: u64,
    rng: &mut ChaCha8Rng,
    height: i64,
    max_terms: Option<usize>,
) -> Polynomial {
    loop {
        let f = random_form(ring, degree, rng, height, max_terms);
        if !f.is_zero() {
            return f;
        }
    }
}
