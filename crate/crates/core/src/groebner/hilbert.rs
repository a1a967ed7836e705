use serde::Serialize;

use super::{buchberger, minimalize_monomials, Ideal};
use crate::error::{Error, Result};
use crate::ring::{monomials_of_degree, Monomial, MonomialOrder};

/// `HF(m) = dim (S/I)_m` for `m = 0..=m_max`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct HilbertFunctionTable {
    pub values: Vec<u64>,
}

impl HilbertFunctionTable {
    pub fn m_max(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    pub fn at(&self, m: usize) -> Option<u64> {
        self.values.get(m).copied()
    }
}

/// Default table length: twice the largest generator degree plus the
/// number of variables.
pub fn default_m_max(ideal: &Ideal) -> u64 {
    let d = ideal.generators().iter().filter_map(|g| g.degree()).max().unwrap_or(0);
    2 * d + ideal.ring().num_vars() as u64
}

/// Hilbert function of `S/I` by counting standard monomials of the grevlex
/// initial ideal.
pub fn hilbert_function(ideal: &Ideal, m_max: u64) -> Result<HilbertFunctionTable> {
    ideal.require_homogeneous()?;
    let ring = ideal.ring();
    let leads = if ideal.is_zero() {
        Vec::new()
    } else {
        let gb = buchberger(ideal, MonomialOrder::Grevlex)?;
        minimalize_monomials(gb.leading_monomials(), ring)
    };
    Ok(HilbertFunctionTable {
        values: count_standard(&leads, ring.num_vars(), m_max, ring.weights()),
    })
}

pub(crate) fn count_standard(leads: &[Monomial], n: usize, m_max: u64, weights: Option<&[u32]>) -> Vec<u64> {
    (0..=m_max)
        .map(|m| {
            monomials_of_degree(n, m, weights)
                .iter()
                .filter(|mono| !leads.iter().any(|l| l.divides(mono)))
                .count() as u64
        })
        .collect()
}

/// `dim S/I`: the largest set of variables containing the support of no
/// leading monomial, i.e. `n` minus a minimum transversal of the supports.
pub fn krull_dimension(ideal: &Ideal) -> Result<usize> {
    let n = ideal.ring().num_vars();
    if ideal.is_zero() {
        return Ok(n);
    }
    let gb = buchberger(ideal, MonomialOrder::Grevlex)?;
    if gb.is_unit() {
        return Err(Error::UnitIdeal);
    }
    let leads = minimalize_monomials(gb.leading_monomials(), ideal.ring());
    Ok(dimension_of_monomial_ideal(&leads, n))
}

pub fn codimension(ideal: &Ideal) -> Result<usize> {
    Ok(ideal.ring().num_vars() - krull_dimension(ideal)?)
}

pub(crate) fn dimension_of_monomial_ideal(leads: &[Monomial], n: usize) -> usize {
    assert!(n <= 64, "dimension search supports at most 64 variables");
    let mut supports: Vec<u64> = leads.iter().map(|m| m.support_mask()).collect();
    supports.sort_unstable();
    supports.dedup();
    // A support containing another is hit whenever the smaller one is.
    let minimal: Vec<u64> = supports
        .iter()
        .copied()
        .filter(|&s| !supports.iter().any(|&t| t != s && t & s == t))
        .collect();
    n - min_transversal(&minimal, 0, usize::MAX)
}

fn min_transversal(sets: &[u64], chosen: u64, best: usize) -> usize {
    let size = chosen.count_ones() as usize;
    if size >= best {
        return best;
    }
    let Some(&unhit) = sets.iter().find(|&&s| s & chosen == 0) else {
        return size;
    };
    let mut best = best;
    let mut bits = unhit;
    while bits != 0 {
        let b = bits & bits.wrapping_neg();
        bits &= bits - 1;
        best = best.min(min_transversal(sets, chosen | b, best));
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{FieldSpec, Polynomial, Ring, RingContext};

    fn q(n: usize) -> Ring {
        RingContext::standard(FieldSpec::Rationals, n).unwrap()
    }

    fn v(r: &Ring, i: usize) -> Polynomial {
        Polynomial::var(r, i).unwrap()
    }

    #[test]
    fn codimension_one_for_xy_xz() {
        let r = q(3);
        let (x, y, z) = (v(&r, 0), v(&r, 1), v(&r, 2));
        let i = Ideal::new(&r, vec![&x * &y, &x * &z]).unwrap();
        assert_eq!(krull_dimension(&i).unwrap(), 2);
        assert_eq!(codimension(&i).unwrap(), 1);
    }

    #[test]
    fn linear_space_dimensions() {
        for n in 1..=5 {
            let r = q(n);
            for k in 0..=n {
                let i = Ideal::new(&r, (0..k).map(|j| v(&r, j)).collect()).unwrap();
                assert_eq!(krull_dimension(&i).unwrap(), n - k);
            }
        }
    }

    #[test]
    fn sum_of_squares_and_product() {
        let r = q(4);
        let s = (0..4).fold(Polynomial::zero(&r), |acc, i| &acc + &v(&r, i).pow(2));
        let i = Ideal::new(&r, vec![s, &v(&r, 0) * &v(&r, 1)]).unwrap();
        assert_eq!(krull_dimension(&i).unwrap(), 2);
    }

    #[test]
    fn unit_ideal_is_refused() {
        let r = q(2);
        let i = Ideal::new(&r, vec![&v(&r, 0) + &Polynomial::one(&r)]).unwrap();
        let j = Ideal::new(&r, vec![v(&r, 0), &v(&r, 0) + &Polynomial::one(&r)]).unwrap();
        assert_eq!(krull_dimension(&i).unwrap(), 1);
        assert_eq!(krull_dimension(&j), Err(Error::UnitIdeal));
    }

    #[test]
    fn maximal_ideal_hilbert_function() {
        let r = q(3);
        let i = Ideal::new(&r, (0..3).map(|j| v(&r, j)).collect()).unwrap();
        let hf = hilbert_function(&i, 4).unwrap();
        assert_eq!(hf.values, vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn quadric_in_three_variables() {
        let r = q(3);
        let f = &(&v(&r, 0) * &v(&r, 1)) + &v(&r, 2).pow(2);
        let hf = hilbert_function(&Ideal::new(&r, vec![f]).unwrap(), 3).unwrap();
        assert_eq!(hf.values, vec![1, 3, 5, 7]);
    }

    #[test]
    fn inhomogeneous_rejected() {
        let r = q(2);
        let f = &v(&r, 0).pow(2) + &v(&r, 1);
        assert!(matches!(
            hilbert_function(&Ideal::new(&r, vec![f]).unwrap(), 3),
            Err(Error::Inhomogeneous(_))
        ));
    }
}
