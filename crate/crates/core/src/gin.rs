//! Generic initial ideals under grevlex, estimated from seeded random
//! changes of coordinates, and the projective-dimension invariance check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, default_m_max, hilbert_function, minimalize_monomials, Ideal};
use crate::linalg::DenseMatrix;
use crate::resolution::projective_dimension;
use crate::ring::{FieldSpec, Monomial, MonomialOrder, Polynomial, Ring};

#[derive(Clone, Debug)]
pub struct GinOptions {
    pub seed: u64,
    /// Independent random changes per attempt (at least 2).
    pub trials: usize,
    /// Entries of the random matrices lie in `[-bound, bound]`.
    pub bound: i64,
    /// Smallest characteristic accepted for prime fields.
    pub char_floor: u32,
}

impl Default for GinOptions {
    fn default() -> Self {
        GinOptions {
            seed: 0,
            trials: 3,
            bound: 50,
            char_floor: 101,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GinResult {
    /// Minimal monomial generators, in descending grevlex order.
    pub gin: Ideal,
    pub trials_used: usize,
    /// All trials of the accepted attempt agreed (and, in characteristic
    /// 0, the result is Borel-fixed).
    pub stable: bool,
    pub seed: u64,
    pub bound_used: i64,
}

/// Generic initial ideal of a homogeneous ideal. All trials of an attempt
/// must agree; otherwise the bound is doubled and a second attempt is made.
/// If that also disagrees the most frequent result is returned with
/// `stable = false`.
pub fn generic_initial_ideal(ideal: &Ideal, opts: &GinOptions) -> Result<GinResult> {
    let ring = ideal.ring().clone();
    ideal.require_homogeneous()?;
    if !ring.is_standard_graded() {
        return Err(Error::InvalidInput("generic initial ideals need the standard grading".into()));
    }
    if let FieldSpec::Prime(p) = ring.field() {
        if p < opts.char_floor {
            return Err(Error::UnsupportedCharacteristic(format!(
                "generic changes of coordinates need characteristic at least {}, got {p}",
                opts.char_floor
            )));
        }
    }
    if opts.trials < 2 {
        return Err(Error::InvalidInput("at least 2 trials are needed".into()));
    }
    let mut bound = opts.bound;
    let mut trials_used = 0;
    let mut last = Vec::new();
    for attempt in 0..2u64 {
        let results = (0..opts.trials)
            .into_par_iter()
            .map(|trial| {
                let stream = (attempt << 32) | trial as u64;
                initial_after_change(ideal, opts.seed, stream, bound)
            })
            .collect::<Result<Vec<_>>>()?;
        trials_used += opts.trials;
        let agree = results.windows(2).all(|w| w[0] == w[1]);
        let borel = ring.field() != FieldSpec::Rationals || is_strongly_stable(&results[0]);
        if agree && borel {
            return Ok(GinResult {
                gin: monomial_ideal(&ring, &results[0])?,
                trials_used,
                stable: true,
                seed: opts.seed,
                bound_used: bound,
            });
        }
        last = results;
        bound *= 2;
    }
    let majority = most_frequent(&last);
    Ok(GinResult {
        gin: monomial_ideal(&ring, majority)?,
        trials_used,
        stable: false,
        seed: opts.seed,
        bound_used: bound / 2,
    })
}

fn most_frequent(results: &[Vec<Monomial>]) -> &Vec<Monomial> {
    let mut best = &results[0];
    let mut best_count = 0;
    for r in results {
        let c = results.iter().filter(|s| *s == r).count();
        if c > best_count {
            best = r;
            best_count = c;
        }
    }
    best
}

fn monomial_ideal(ring: &Ring, monos: &[Monomial]) -> Result<Ideal> {
    let one = ring.field().one();
    Ideal::new(
        ring,
        monos.iter().map(|m| Polynomial::monomial(ring, one.clone(), m.clone())).collect(),
    )
}

/// Random invertible integer matrix with entries in `[-bound, bound]`,
/// resampled while singular.
pub(crate) fn random_change(ring: &Ring, seed: u64, stream: u64, bound: i64) -> Vec<Polynomial> {
    let n = ring.num_vars();
    let field = ring.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    loop {
        let rows: Vec<Vec<_>> = (0..n)
            .map(|_| (0..n).map(|_| field.from_i64(rng.gen_range(-bound..=bound))).collect())
            .collect();
        if DenseMatrix::new(field, rows.clone()).determinant().is_zero() {
            continue;
        }
        return rows.iter().map(|row| Polynomial::linear(ring, row)).collect();
    }
}

fn initial_after_change(ideal: &Ideal, seed: u64, stream: u64, bound: i64) -> Result<Vec<Monomial>> {
    let ring = ideal.ring();
    let images = random_change(ring, seed, stream, bound);
    let moved = ideal
        .generators()
        .iter()
        .map(|g| g.substitute_into(ring, &images))
        .collect::<Result<Vec<_>>>()?;
    let gb = buchberger(&Ideal::new(ring, moved)?, MonomialOrder::Grevlex)?;
    Ok(minimalize_monomials(gb.leading_monomials(), ring))
}

/// Closure of the generators under `m -> x_j m / x_i` for `j < i`, the
/// combinatorial form of Borel-fixedness in characteristic 0.
pub fn is_strongly_stable(gens: &[Monomial]) -> bool {
    let in_ideal = |m: &Monomial| gens.iter().any(|g| g.divides(m));
    gens.iter().all(|m| {
        let n = m.num_vars();
        m.support().all(|i| {
            (0..i).all(|j| {
                let moved = m.div(&Monomial::var(n, i)).unwrap().mul(&Monomial::var(n, j));
                in_ideal(&moved)
            })
        })
    })
}

/// True when the ideal is generated by monomials forming a strongly stable
/// set.
pub fn is_borel_fixed(ideal: &Ideal) -> bool {
    if !ideal.is_monomial() {
        return false;
    }
    let monos: Vec<Monomial> = ideal
        .generators()
        .iter()
        .map(|g| g.terms()[0].monomial.clone())
        .collect();
    is_strongly_stable(&minimalize_monomials(monos, ideal.ring()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GinPdCheck {
    pub pd_ideal: usize,
    pub pd_gin: usize,
    pub agree: bool,
    /// Hilbert functions of `I` and `gin(I)` coincide up to the default
    /// table length.
    pub hilbert_agree: bool,
}

/// Compares `pd(S/I)` with `pd(S/gin(I))`; an unstable gin is an error.
pub fn check_gin_pd_invariance(ideal: &Ideal, opts: &GinOptions) -> Result<(GinResult, GinPdCheck)> {
    let gin = generic_initial_ideal(ideal, opts)?;
    if !gin.stable {
        return Err(Error::UnstableGin {
            trials: gin.trials_used,
        });
    }
    let (a, b) = rayon::join(|| projective_dimension(ideal), || projective_dimension(&gin.gin));
    let (pd_ideal, pd_gin) = (a?, b?);
    let m = default_m_max(ideal);
    let hilbert_agree = hilbert_function(ideal, m)? == hilbert_function(&gin.gin, m)?;
    let check = GinPdCheck {
        pd_ideal,
        pd_gin,
        agree: pd_ideal == pd_gin,
        hilbert_agree,
    };
    Ok((gin, check))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingContext;

    fn q(n: usize) -> Ring {
        RingContext::standard(FieldSpec::Rationals, n).unwrap()
    }

    fn v(r: &Ring, i: usize) -> Polynomial {
        Polynomial::var(r, i).unwrap()
    }

    #[test]
    fn borel_fixed_ideal_is_its_own_gin() {
        let r = q(2);
        let (x1, x2) = (v(&r, 0), v(&r, 1));
        let i = Ideal::new(&r, vec![x1.pow(2), &x1 * &x2]).unwrap();
        assert!(is_borel_fixed(&i));
        let g = generic_initial_ideal(&i, &GinOptions::default()).unwrap();
        assert!(g.stable);
        assert_eq!(g.gin, i);
    }

    #[test]
    fn square_of_last_variable() {
        let r = q(2);
        let i = Ideal::new(&r, vec![v(&r, 1).pow(2)]).unwrap();
        assert!(!is_borel_fixed(&i));
        let g = generic_initial_ideal(&i, &GinOptions::default()).unwrap();
        assert_eq!(g.gin.generators(), &[v(&r, 0).pow(2)]);
    }

    #[test]
    fn linear_form() {
        let r = q(3);
        let l = &(&v(&r, 1) - &v(&r, 2)).scale(&FieldSpec::Rationals.from_i64(3)) + &v(&r, 2);
        let i = Ideal::new(&r, vec![l]).unwrap();
        let g = generic_initial_ideal(&i, &GinOptions { seed: 9, ..GinOptions::default() }).unwrap();
        assert_eq!(g.gin.generators(), &[v(&r, 0)]);
    }

    #[test]
    fn pd_invariance_examples() {
        let r = q(2);
        let (x1, x2) = (v(&r, 0), v(&r, 1));
        let i = Ideal::new(&r, vec![x1.pow(2), &x1 * &x2]).unwrap();
        let (_, c) = check_gin_pd_invariance(&i, &GinOptions::default()).unwrap();
        assert_eq!((c.pd_ideal, c.pd_gin, c.agree, c.hilbert_agree), (2, 2, true, true));
        let p = Ideal::new(&r, vec![&x1.pow(3) + &x2.pow(3)]).unwrap();
        let (_, c) = check_gin_pd_invariance(&p, &GinOptions::default()).unwrap();
        assert_eq!((c.pd_ideal, c.pd_gin), (1, 1));
    }

    #[test]
    fn small_characteristic_refused() {
        let r = RingContext::standard(FieldSpec::prime(5).unwrap(), 2).unwrap();
        let i = Ideal::new(&r, vec![v(&r, 0)]).unwrap();
        assert!(matches!(
            generic_initial_ideal(&i, &GinOptions::default()),
            Err(Error::UnsupportedCharacteristic(_))
        ));
        let big = RingContext::standard(FieldSpec::prime(101).unwrap(), 2).unwrap();
        let i = Ideal::new(&big, vec![v(&big, 1).pow(2)]).unwrap();
        assert!(generic_initial_ideal(&i, &GinOptions::default()).unwrap().stable);
    }

    #[test]
    fn deterministic_per_seed() {
        let r = q(3);
        let f = &(&v(&r, 0) * &v(&r, 1)) + &v(&r, 2).pow(2);
        let i = Ideal::new(&r, vec![f, v(&r, 1).pow(2)]).unwrap();
        let a = generic_initial_ideal(&i, &GinOptions { seed: 4, ..GinOptions::default() }).unwrap();
        let b = generic_initial_ideal(&i, &GinOptions { seed: 4, ..GinOptions::default() }).unwrap();
        assert_eq!(a, b);
    }
}
