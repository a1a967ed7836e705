use serde::Serialize;

use super::regular::is_regular_sequence;
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::resolution::projective_dimension;
use crate::ring::{check_same, FieldSpec, Homogeneity, Polynomial, Ring, RingContext};

/// Ring `k[X_1, ..., X_s]` with `deg X_j = deg g_j`, so that substituting
/// `X_j -> g_j` preserves degrees.
pub fn outer_ring(field: FieldSpec, inner: &[Polynomial]) -> Result<Ring> {
    let mut weights = Vec::with_capacity(inner.len());
    for g in inner {
        match g.homogeneity() {
            Homogeneity::Homogeneous(d) if d > 0 => weights.push(
                u32::try_from(d).map_err(|_| Error::UnsupportedDegree(format!("degree {d} too large")))?,
            ),
            _ => {
                return Err(Error::InvalidInput(format!(
                    "inner forms must be homogeneous of positive degree, got {g}"
                )))
            }
        }
    }
    Ok(RingContext::symbols(field, "X", inner.len(), Some(weights)))
}

/// `f_i = F_i(g_1, ..., g_s)` with the `F_i` in the graded ring of
/// [`outer_ring`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubalgebraPresentation {
    inner: Vec<Polynomial>,
    outers: Vec<Polynomial>,
    images: Vec<Polynomial>,
}

impl SubalgebraPresentation {
    /// The outer polynomials may live in any ring with one variable per
    /// inner form over the same field; they are moved into the graded
    /// ring of [`outer_ring`].
    pub fn new(inner: Vec<Polynomial>, outers: Vec<Polynomial>) -> Result<Self> {
        let Some(first) = inner.first() else {
            return Err(Error::InvalidInput("a presentation needs at least one inner form".into()));
        };
        let ambient = first.ring().clone();
        for g in &inner {
            check_same(g.ring(), &ambient)?;
        }
        let t = outer_ring(ambient.field(), &inner)?;
        let outers = outers.iter().map(|f| f.in_ring(&t)).collect::<Result<Vec<_>>>()?;
        let images = outers
            .iter()
            .map(|f| f.substitute_into(&ambient, &inner))
            .collect::<Result<Vec<_>>>()?;
        Ok(SubalgebraPresentation { inner, outers, images })
    }

    pub fn inner(&self) -> &[Polynomial] {
        &self.inner
    }

    pub fn outers(&self) -> &[Polynomial] {
        &self.outers
    }

    /// `f_i = F_i(g)` in the ambient ring.
    pub fn images(&self) -> &[Polynomial] {
        &self.images
    }

    pub fn outer_ring(&self) -> &Ring {
        self.outers.first().map_or_else(|| self.inner[0].ring(), |f| f.ring())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PdTransfer {
    /// `pd` of `T/(F_1, ..., F_r)` over the graded outer ring `T`.
    pub pd_inner: usize,
    /// `pd` of `S/(f_1, ..., f_r)` over the ambient ring `S`.
    pub pd_ambient: usize,
    pub agree: bool,
}

/// Computes both projective dimensions. Because a regular inner tuple makes
/// `S` free over `k[g]`, base change carries a minimal resolution over `T`
/// to one over `S`; disagreement is reported as an invariant violation.
pub fn pd_transfer(sp: &SubalgebraPresentation) -> Result<PdTransfer> {
    if !is_regular_sequence(&sp.inner)? {
        return Err(Error::NotRegular);
    }
    let t_ideal = Ideal::new(sp.outer_ring(), sp.outers.clone())?;
    let s_ideal = Ideal::new(sp.inner[0].ring(), sp.images.clone())?;
    let (a, b) = rayon::join(|| projective_dimension(&t_ideal), || projective_dimension(&s_ideal));
    let (pd_inner, pd_ambient) = (a?, b?);
    if pd_inner != pd_ambient {
        return Err(Error::Invariant(format!(
            "projective dimension {pd_inner} over the subalgebra but {pd_ambient} in the ambient ring"
        )));
    }
    Ok(PdTransfer {
        pd_inner,
        pd_ambient,
        agree: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(r: &Ring, i: usize) -> Polynomial {
        Polynomial::var(r, i).unwrap()
    }

    #[test]
    fn two_quadrics_carry_the_two_monomial_example() {
        let s = RingContext::standard(FieldSpec::Rationals, 3).unwrap();
        let (x1, x2, x3) = (v(&s, 0), v(&s, 1), v(&s, 2));
        let g1 = &(&x1.pow(2) + &x2.pow(2)) + &x3.pow(2);
        let g2 = &(&x1 * &x2) + &(&x2 * &x3);
        let t = outer_ring(FieldSpec::Rationals, &[g1.clone(), g2.clone()]).unwrap();
        let (a, b) = (v(&t, 0), v(&t, 1));
        let sp = SubalgebraPresentation::new(vec![g1, g2], vec![a.pow(2), &a * &b]).unwrap();
        let res = pd_transfer(&sp).unwrap();
        assert_eq!((res.pd_inner, res.pd_ambient, res.agree), (2, 2, true));
    }

    #[test]
    fn elementary_symmetric_mixed_degrees() {
        let s = RingContext::standard(FieldSpec::Rationals, 3).unwrap();
        let (x1, x2, x3) = (v(&s, 0), v(&s, 1), v(&s, 2));
        let e1 = &(&x1 + &x2) + &x3;
        let e2 = &(&(&x1 * &x2) + &(&x1 * &x3)) + &(&x2 * &x3);
        let t = outer_ring(FieldSpec::Rationals, &[e1.clone(), e2.clone()]).unwrap();
        assert_eq!(t.weights(), Some(&[1, 2][..]));
        let sp = SubalgebraPresentation::new(vec![e1, e2], vec![v(&t, 0), v(&t, 1)]).unwrap();
        assert_eq!(pd_transfer(&sp).unwrap().pd_ambient, 2);
    }

    #[test]
    fn non_regular_inner_refused() {
        let s = RingContext::standard(FieldSpec::Rationals, 3).unwrap();
        let (x, y, z) = (v(&s, 0), v(&s, 1), v(&s, 2));
        let inner = vec![&x * &y, &x * &z];
        let t = outer_ring(FieldSpec::Rationals, &inner).unwrap();
        let sp = SubalgebraPresentation::new(inner, vec![v(&t, 0)]).unwrap();
        assert_eq!(pd_transfer(&sp), Err(Error::NotRegular));
    }
}
