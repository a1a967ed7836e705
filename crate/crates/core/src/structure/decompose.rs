use serde::Serialize;

use super::transfer::{outer_ring, SubalgebraPresentation};
use crate::error::{Error, Result};
use crate::ring::{check_same, Polynomial, RingContext};
use crate::strength::{nu_tuple, NuValue};

/// The threshold `N : s -> N(s)` of the decomposition algorithm.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ThresholdFunction {
    Constant(usize),
    /// `N(s) = table[s]`, with the last entry repeated beyond the table.
    Table(Vec<usize>),
}

impl ThresholdFunction {
    pub fn eval(&self, s: usize) -> usize {
        match self {
            ThresholdFunction::Constant(c) => *c,
            ThresholdFunction::Table(t) => t.get(s).or(t.last()).copied().unwrap_or(0),
        }
    }

    /// `max_{t <= s} N(t)`.
    pub fn max_up_to(&self, s: usize) -> usize {
        (0..=s).map(|t| self.eval(t)).max().unwrap_or(0)
    }
}

/// Output of [`decompose_to_high_nu`]: `f_i = outers[i](inner)`, with the
/// inner tuple of ν above the threshold at its length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub inner: Vec<Polynomial>,
    /// Polynomials in a ring with one variable per inner form, graded by
    /// the inner degrees.
    pub outers: Vec<Polynomial>,
    pub nu: NuValue,
    /// Number of rewriting steps taken.
    pub steps: usize,
}

impl Decomposition {
    /// Checks `outers[i](inner) = fs[i]` for every `i`.
    pub fn reproduces(&self, fs: &[Polynomial]) -> Result<bool> {
        if fs.len() != self.outers.len() {
            return Ok(false);
        }
        let Some(first) = fs.first() else {
            return Ok(true);
        };
        for (f, outer) in fs.iter().zip(&self.outers) {
            if &outer.substitute_into(first.ring(), &self.inner)? != f {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The decomposition as a subalgebra presentation; requires a nonempty
    /// inner tuple.
    pub fn presentation(&self) -> Result<SubalgebraPresentation> {
        SubalgebraPresentation::new(self.inner.clone(), self.outers.clone())
    }
}

const MAX_STEPS: usize = 100_000;

/// Rewrites `fs` as polynomials in a tuple `g` with `ν(g) > N(len g)`.
///
/// Starting from `g = fs`, while `ν(g) <= N(t)` pick a combination
/// `h = sum a_j g_j` attaining ν, drop the last `g_j` with `a_j != 0` and
/// append the inner forms of a decomposition of `h` (none when `h` is
/// constant, diagonalizing linear forms when `h` is a quadric). The outer
/// polynomials are updated by `X_j -> (H(Y) - sum_{i != j} a_i X_i) / a_j`.
/// Every step lowers the multiset of degrees, so the loop terminates.
pub fn decompose_to_high_nu(fs: &[Polynomial], threshold: &ThresholdFunction) -> Result<Decomposition> {
    let Some(first) = fs.first() else {
        return Ok(Decomposition {
            inner: Vec::new(),
            outers: Vec::new(),
            nu: NuValue::Infinite,
            steps: 0,
        });
    };
    let ring = first.ring().clone();
    let field = ring.field();
    for f in fs {
        check_same(f.ring(), &ring)?;
    }
    let mut gs = fs.to_vec();
    let initial = RingContext::symbols(field, "X", gs.len(), None);
    let mut outers: Vec<Polynomial> = (0..gs.len()).map(|i| Polynomial::var(&initial, i).unwrap()).collect();
    let mut steps = 0;
    loop {
        let t = gs.len();
        let report = nu_tuple(&gs)?;
        if report.value.exceeds(threshold.eval(t)) {
            let weighted = outer_ring(field, &gs)?;
            let outers = outers.iter().map(|f| f.in_ring(&weighted)).collect::<Result<Vec<_>>>()?;
            return Ok(Decomposition {
                inner: gs,
                outers,
                nu: report.value,
                steps,
            });
        }
        steps += 1;
        if steps > MAX_STEPS {
            return Err(Error::Invariant("decomposition failed to terminate".into()));
        }
        let (Some(alpha), Some(witness)) = (report.combination, report.witness) else {
            return Err(Error::NoRationalWitness(format!(
                "a combination of ν {} exists over the algebraic closure but none of small height over {}",
                report.value,
                field.name()
            )));
        };
        let j = alpha.iter().rposition(|a| !a.is_zero()).expect("nontrivial combination");
        let k = witness.inner.len();
        let new_t = t - 1 + k;
        let new_ring = RingContext::symbols(field, "X", new_t, None);
        let y = |i: usize| Polynomial::var(&new_ring, i).unwrap();
        let position = |i: usize| if i < j { i } else { i - 1 };
        let h_images: Vec<Polynomial> = (0..k).map(|m| y(t - 1 + m)).collect();
        let mut xj = witness.outer.substitute_into(&new_ring, &h_images)?;
        for (i, a) in alpha.iter().enumerate() {
            if i != j && !a.is_zero() {
                xj = &xj - &y(position(i)).scale(a);
            }
        }
        let xj = xj.scale(&alpha[j].inv());
        let images: Vec<Polynomial> = (0..t).map(|i| if i == j { xj.clone() } else { y(position(i)) }).collect();
        outers = outers
            .iter()
            .map(|f| f.substitute_into(&new_ring, &images))
            .collect::<Result<Vec<_>>>()?;
        gs.remove(j);
        gs.extend(witness.inner);
    }
}
