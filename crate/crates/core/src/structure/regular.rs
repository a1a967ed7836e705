use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::{codimension, Ideal};
use crate::linalg::DenseMatrix;
use crate::ring::{check_same, FieldSpec, Homogeneity, Polynomial, Ring};

/// Outcome of the codimension test for regular sequences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularSequenceReport {
    pub regular: bool,
    /// Codimension of the ideal generated by the tuple.
    pub codim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

/// `f_1, ..., f_r` is regular iff `V(f_1, ..., f_r)` has codimension `r`.
pub fn regular_sequence_report(fs: &[Polynomial]) -> Result<RegularSequenceReport> {
    let Some(first) = fs.first() else {
        return Ok(RegularSequenceReport {
            regular: true,
            codim: Some(0),
            reason: None,
        });
    };
    let ring = first.ring().clone();
    let mut has_zero = false;
    for f in fs {
        check_same(f.ring(), &ring)?;
        match f.homogeneity() {
            Homogeneity::Zero => has_zero = true,
            Homogeneity::Inhomogeneous => return Err(Error::Inhomogeneous(f.to_string())),
            Homogeneity::Homogeneous(0) => {
                return Err(Error::UnsupportedDegree(format!(
                    "regular sequences need positive degree, got constant {f}"
                )))
            }
            Homogeneity::Homogeneous(_) => {}
        }
    }
    let codim = codimension(&Ideal::new(&ring, fs.to_vec())?)?;
    let reason = if has_zero {
        Some("a member is zero".to_string())
    } else if fs.len() > ring.num_vars() {
        Some(format!("{} members exceed {} variables", fs.len(), ring.num_vars()))
    } else if codim != fs.len() {
        Some(format!("codimension {codim} is less than {}", fs.len()))
    } else {
        None
    };
    Ok(RegularSequenceReport {
        regular: reason.is_none(),
        codim: Some(codim),
        reason,
    })
}

pub fn is_regular_sequence(fs: &[Polynomial]) -> Result<bool> {
    Ok(regular_sequence_report(fs)?.regular)
}

const JACOBIAN_SEED: u64 = 0x5eed_1ac0_b1a2;
const EVALUATION_RANGES: [i64; 3] = [10, 100, 1000];

/// Algebraic independence in characteristic 0 via the rank of the Jacobian
/// matrix over the fraction field. Evaluations at pseudo-random integer
/// points give lower bounds; a full-rank evaluation settles the question,
/// otherwise the rank is computed symbolically.
pub fn jacobian_independent(fs: &[Polynomial]) -> Result<bool> {
    let Some(first) = fs.first() else {
        return Ok(true);
    };
    let ring = first.ring().clone();
    if ring.field() != FieldSpec::Rationals {
        return Err(Error::UnsupportedCharacteristic(
            "the Jacobian criterion needs characteristic 0".into(),
        ));
    }
    for f in fs {
        check_same(f.ring(), &ring)?;
    }
    let n = ring.num_vars();
    let r = fs.len();
    if r > n {
        return Ok(false);
    }
    let jac = jacobian(fs, &ring)?;
    let mut rng = ChaCha8Rng::seed_from_u64(JACOBIAN_SEED);
    for range in EVALUATION_RANGES {
        let point: Vec<_> = (0..n)
            .map(|_| ring.field().from_i64(rng.gen_range(-range..=range)))
            .collect();
        let rows = jac
            .iter()
            .map(|row| row.iter().map(|p| p.evaluate(&point)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        if DenseMatrix::new(ring.field(), rows).rank() == r {
            return Ok(true);
        }
    }
    Ok(symbolic_rank(jac)? == r)
}

fn jacobian(fs: &[Polynomial], ring: &Ring) -> Result<Vec<Vec<Polynomial>>> {
    fs.iter()
        .map(|f| (0..ring.num_vars()).map(|i| f.partial_derivative(i)).collect())
        .collect()
}

/// Rank of a polynomial matrix by fraction-free (Bareiss) elimination.
pub(crate) fn symbolic_rank(mut m: Vec<Vec<Polynomial>>) -> Result<usize> {
    let Some(first) = m.first().and_then(|r| r.first()) else {
        return Ok(0);
    };
    let ring = first.ring().clone();
    let nrows = m.len();
    let ncols = m[0].len();
    let mut prev = Polynomial::one(&ring);
    let mut rank = 0;
    for k in 0..nrows.min(ncols) {
        let pivot = (k..nrows).flat_map(|i| (k..ncols).map(move |j| (i, j))).find(|&(i, j)| !m[i][j].is_zero());
        let Some((pi, pj)) = pivot else {
            break;
        };
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        rank += 1;
        for i in k + 1..nrows {
            for j in k + 1..ncols {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num
                    .div_exact(&prev)?
                    .ok_or_else(|| Error::Invariant("fraction-free elimination lost exactness".into()))?;
            }
            m[i][k] = Polynomial::zero(&ring);
        }
        prev = m[k][k].clone();
    }
    Ok(rank)
}

/// Checks `d/dx_i F(g) = sum_j (dF/dX_j)(g) * dg_j/dx_i` for every
/// variable `x_i` of the ring of `g`.
pub fn chain_rule_holds(outer: &Polynomial, inner: &[Polynomial]) -> Result<bool> {
    let Some(first) = inner.first() else {
        return Err(Error::InvalidInput("chain rule needs at least one inner polynomial".into()));
    };
    let ring = first.ring().clone();
    let composite = outer.substitute_into(&ring, inner)?;
    let outer_partials = (0..inner.len())
        .map(|j| outer.partial_derivative(j)?.substitute_into(&ring, inner))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..ring.num_vars() {
        let lhs = composite.partial_derivative(i)?;
        let mut rhs = Polynomial::zero(&ring);
        for (fj, g) in outer_partials.iter().zip(inner) {
            rhs = &rhs + &(fj * &g.partial_derivative(i)?);
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
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
    fn variables_are_regular() {
        let r = q(4);
        for k in 0..=4 {
            let xs: Vec<Polynomial> = (0..k).map(|i| v(&r, i)).collect();
            assert!(is_regular_sequence(&xs).unwrap());
            assert!(jacobian_independent(&xs).unwrap());
        }
    }

    #[test]
    fn xy_xz_has_codimension_one() {
        let r = q(3);
        let (x, y, z) = (v(&r, 0), v(&r, 1), v(&r, 2));
        let rep = regular_sequence_report(&[&x * &y, &x * &z]).unwrap();
        assert!(!rep.regular);
        assert_eq!(rep.codim, Some(1));
    }

    #[test]
    fn degenerate_inputs() {
        let r = q(2);
        let (x, y) = (v(&r, 0), v(&r, 1));
        let zero = regular_sequence_report(&[x.clone(), Polynomial::zero(&r)]).unwrap();
        assert!(!zero.regular);
        let many = regular_sequence_report(&[x.clone(), y.clone(), &x + &y]).unwrap();
        assert!(!many.regular);
        assert!(many.reason.unwrap().contains("exceed"));
        assert!(regular_sequence_report(&[Polynomial::one(&r)]).is_err());
    }

    #[test]
    fn dependent_jacobian() {
        let r = q(2);
        let s = &v(&r, 0) + &v(&r, 1);
        assert!(!jacobian_independent(&[s.clone(), s.pow(2)]).unwrap());
        let fp = RingContext::standard(FieldSpec::prime(5).unwrap(), 2).unwrap();
        assert!(jacobian_independent(&[v(&fp, 0)]).is_err());
    }

    #[test]
    fn bareiss_rank() {
        let r = q(2);
        let (x, y) = (v(&r, 0), v(&r, 1));
        let m = vec![vec![x.clone(), y.clone()], vec![&x * &y, y.pow(2)]];
        assert_eq!(symbolic_rank(m).unwrap(), 1);
        let m = vec![vec![x.clone(), y.clone()], vec![y.clone(), x.clone()]];
        assert_eq!(symbolic_rank(m).unwrap(), 2);
    }

    #[test]
    fn chain_rule_example() {
        let r = q(3);
        let t = RingContext::symbols(FieldSpec::Rationals, "X", 2, None);
        let outer = &(&v(&t, 0).pow(2) * &v(&t, 1)) - &v(&t, 1).pow(3);
        let inner = vec![&v(&r, 0) + &v(&r, 2), &v(&r, 1) * &v(&r, 2)];
        assert!(chain_rule_holds(&outer, &inner).unwrap());
    }
}
