//! ν-complexity and strength. Exact for quadratic forms (rank of the Gram
//! matrix) and tuples of forms of degree at most 2 (minimum rank over the
//! pencil); witness checking and a support bound for higher degrees.

mod pencil;
mod quadric;

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{Coeff, Monomial, Polynomial, Ring, RingContext};

pub use pencil::{min_pencil_rank_closure, nu_tuple, PENCIL_ENUMERATION_CAP};
pub use quadric::QuadraticForm;

/// A ν value: a natural number, or infinity (independent linear forms).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NuValue {
    Finite(usize),
    Infinite,
}

impl NuValue {
    /// `self > n`.
    pub fn exceeds(&self, n: usize) -> bool {
        match self {
            NuValue::Finite(v) => *v > n,
            NuValue::Infinite => true,
        }
    }

    pub fn finite(&self) -> Option<usize> {
        match self {
            NuValue::Finite(v) => Some(*v),
            NuValue::Infinite => None,
        }
    }
}

impl fmt::Display for NuValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NuValue::Finite(v) => write!(f, "{v}"),
            NuValue::Infinite => write!(f, "inf"),
        }
    }
}

/// `f = outer(inner_1, ..., inner_s)` with every inner form of degree
/// strictly below `deg f`; certifies `ν(f) <= s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionWitness {
    pub outer: Polynomial,
    pub inner: Vec<Polynomial>,
}

impl DecompositionWitness {
    pub fn len(&self) -> usize {
        self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.is_empty()
    }
}

/// Result of a ν computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NuReport {
    pub value: NuValue,
    /// Coefficients of a homogeneous combination of the inputs attaining
    /// the value (`[1]` for a single form). Absent for the value ∞, and
    /// over ℚ when no combination of small height attains it.
    pub combination: Option<Vec<Coeff>>,
    /// Decomposition of that combination with as many inner forms as the
    /// value.
    pub witness: Option<DecompositionWitness>,
}

/// ν of a quadratic form: its rank. The witness writes `f` as
/// `sum d_k X_k^2` evaluated at diagonalizing linear forms.
pub fn nu_quadric(f: &Polynomial) -> Result<NuReport> {
    let form = QuadraticForm::new(f)?;
    let (ds, ls) = form.diagonalize();
    Ok(NuReport {
        value: NuValue::Finite(ls.len()),
        combination: Some(vec![f.field().one()]),
        witness: Some(diagonal_witness(f.ring(), &ds, ls)),
    })
}

pub(crate) fn diagonal_witness(ring: &Ring, ds: &[Coeff], ls: Vec<Polynomial>) -> DecompositionWitness {
    let t = RingContext::symbols(ring.field(), "X", ls.len(), None);
    let outer = ds.iter().enumerate().fold(Polynomial::zero(&t), |acc, (k, d)| {
        &acc + &Polynomial::var(&t, k).unwrap().pow(2).scale(d)
    });
    DecompositionWitness { outer, inner: ls }
}

/// Strength of a quadratic form, `ceil(rank / 2) - 1` (and 0 for the zero
/// form): the least `k` with `f = sum_{i=0}^k g_i h_i`, `g_i, h_i` linear.
pub fn strength_quadric(f: &Polynomial) -> Result<usize> {
    let rank = QuadraticForm::new(f)?.rank();
    Ok(rank.div_ceil(2).saturating_sub(1))
}

fn degree_below(g: &Polynomial, bound: Option<u64>) -> bool {
    match (g.degree(), bound) {
        (None, _) => true,
        (Some(_), None) => false,
        (Some(d), Some(b)) => d < b,
    }
}

/// True iff `outer(inner) = f` and every inner form has degree strictly
/// below `deg f`. The zero polynomial counts as having degree `-∞`.
pub fn verify_witness(f: &Polynomial, w: &DecompositionWitness) -> bool {
    if w.outer.ring().num_vars() != w.inner.len() || w.outer.field() != f.field() {
        return false;
    }
    if w.inner.iter().any(|g| !crate::ring::same_ring(g.ring(), f.ring())) {
        return false;
    }
    let deg = f.degree();
    if !w.inner.iter().all(|g| degree_below(g, deg)) {
        return false;
    }
    matches!(w.outer.substitute_into(f.ring(), &w.inner), Ok(g) if &g == f)
}

/// Number of variables occurring in `f`, an upper bound for `ν(f)`, with
/// the witness `g_i = x_i`, `F = f`.
pub fn nu_variable_bound(f: &Polynomial) -> Result<(usize, DecompositionWitness)> {
    match f.degree() {
        Some(d) if d >= 2 => {}
        _ => return Err(Error::UnsupportedDegree(format!("support bound needs degree at least 2, got {f}"))),
    }
    let support = f.support_vars();
    let ring = f.ring();
    let weights = ring.weights().map(|w| support.iter().map(|&i| w[i]).collect());
    let t = RingContext::symbols(ring.field(), "X", support.len(), weights);
    let outer = Polynomial::from_terms(
        &t,
        f.terms().iter().map(|term| {
            let e: Vec<u32> = support.iter().map(|&i| term.monomial.exponents()[i]).collect();
            (term.coeff.clone(), Monomial::from_exponents(&e))
        }),
    );
    let inner = support.iter().map(|&i| Polynomial::var(ring, i).unwrap()).collect();
    Ok((support.len(), DecompositionWitness { outer, inner }))
}
