use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::ring::{Coeff, Homogeneity, Monomial, Polynomial, Ring};

/// A quadratic form with its symmetric Gram matrix, using the convention
/// `q(x) = x^T G x` (the coefficient `c` of `x_i x_j`, `i != j`, is stored
/// as `c/2` in both slots).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    poly: Polynomial,
    gram: DenseMatrix,
}

pub(crate) fn require_standard(ring: &Ring) -> Result<()> {
    if ring.is_standard_graded() {
        Ok(())
    } else {
        Err(Error::UnsupportedDegree("quadric routines need the standard grading".into()))
    }
}

impl QuadraticForm {
    /// Accepts zero or a homogeneous polynomial of degree 2.
    pub fn new(q: &Polynomial) -> Result<Self> {
        require_standard(q.ring())?;
        match q.homogeneity() {
            Homogeneity::Zero | Homogeneity::Homogeneous(2) => {}
            _ => {
                return Err(Error::UnsupportedDegree(format!(
                    "expected a quadratic form, got {q}"
                )))
            }
        }
        let field = q.field();
        let n = q.ring().num_vars();
        let half = field.from_i64(2).inv();
        let mut gram = DenseMatrix::zeros(field, n, n);
        for t in q.terms() {
            let vars: Vec<usize> = t
                .monomial
                .exponents()
                .iter()
                .enumerate()
                .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
                .collect();
            let (i, j) = (vars[0], vars[1]);
            if i == j {
                gram.rows[i][i] = t.coeff.clone();
            } else {
                let c = &t.coeff * &half;
                gram.rows[i][j] = c.clone();
                gram.rows[j][i] = c;
            }
        }
        Ok(QuadraticForm { poly: q.clone(), gram })
    }

    pub fn from_gram(ring: &Ring, gram: DenseMatrix) -> Result<Self> {
        let n = ring.num_vars();
        if gram.nrows() != n || gram.ncols() != n {
            return Err(Error::ArityMismatch {
                expected: n,
                got: gram.nrows(),
            });
        }
        let field = ring.field();
        let two = field.from_i64(2);
        let mut terms = Vec::new();
        for i in 0..n {
            for j in i..n {
                if gram.rows[i][j] != gram.rows[j][i] {
                    return Err(Error::InvalidInput("Gram matrix is not symmetric".into()));
                }
                let mut e = vec![0u32; n];
                e[i] += 1;
                e[j] += 1;
                let c = if i == j { gram.rows[i][i].clone() } else { &gram.rows[i][j] * &two };
                terms.push((c, Monomial::from_exponents(&e)));
            }
        }
        let poly = Polynomial::from_terms(ring, terms);
        Ok(QuadraticForm { poly, gram })
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    pub fn gram(&self) -> &DenseMatrix {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rank()
    }

    /// Linearly independent forms `l_k` and nonzero scalars `d_k` with
    /// `q = sum d_k l_k^2`; the number of forms is the rank.
    pub fn diagonalize(&self) -> (Vec<Coeff>, Vec<Polynomial>) {
        diagonalize(&self.poly)
    }
}

/// Completes squares on the polynomial itself. A square term `a x_i^2`
/// yields `l = (dq/dx_i) / 2a`; a form without squares but with a cross
/// term `c x_i x_j` splits as `uv/c = ((u+v)^2 - (u-v)^2) / 4c` with
/// `u = dq/dx_i`, `v = dq/dx_j`. Each step removes the variables it used.
fn diagonalize(q: &Polynomial) -> (Vec<Coeff>, Vec<Polynomial>) {
    let field = q.field();
    let n = q.ring().num_vars();
    let two = field.from_i64(2);
    let mut rest = q.clone();
    let mut scalars = Vec::new();
    let mut forms = Vec::new();
    while !rest.is_zero() {
        let square = (0..n).find_map(|i| {
            let c = rest.coefficient(&Monomial::var(n, i).mul(&Monomial::var(n, i)));
            (!c.is_zero()).then_some((i, c))
        });
        if let Some((i, a)) = square {
            let l = rest.partial_derivative(i).unwrap().scale(&(&two * &a).inv());
            rest = &rest - &l.pow(2).scale(&a);
            scalars.push(a);
            forms.push(l);
            continue;
        }
        let t = rest.terms()[0].clone();
        let mut support = t.monomial.support();
        let (i, j) = (support.next().unwrap(), support.next().unwrap());
        let c = t.coeff;
        let u = rest.partial_derivative(i).unwrap();
        let v = rest.partial_derivative(j).unwrap();
        rest = &rest - &(&u * &v).scale(&c.inv());
        let quarter = (&field.from_i64(4) * &c).inv();
        scalars.push(quarter.clone());
        forms.push(&u + &v);
        scalars.push(-&quarter);
        forms.push(&u - &v);
    }
    (scalars, forms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{FieldSpec, RingContext};

    fn v(r: &Ring, i: usize) -> Polynomial {
        Polynomial::var(r, i).unwrap()
    }

    fn rebuild(ds: &[Coeff], ls: &[Polynomial], r: &Ring) -> Polynomial {
        ds.iter()
            .zip(ls)
            .fold(Polynomial::zero(r), |acc, (d, l)| &acc + &l.pow(2).scale(d))
    }

    #[test]
    fn gram_half_convention() {
        let r = RingContext::standard(FieldSpec::Rationals, 2).unwrap();
        let q = &v(&r, 0) * &v(&r, 1);
        let form = QuadraticForm::new(&q).unwrap();
        let half = FieldSpec::Rationals.from_ratio(&1.into(), &2.into()).unwrap();
        assert_eq!(form.gram().rows[0][1], half);
        assert_eq!(form.gram().rows[1][0], half);
        assert_eq!(form.rank(), 2);
        assert_eq!(QuadraticForm::from_gram(&r, form.gram().clone()).unwrap().polynomial(), &q);
    }

    #[test]
    fn diagonalization_reconstructs() {
        for field in [FieldSpec::Rationals, FieldSpec::prime(7).unwrap()] {
            let r = RingContext::standard(field, 4).unwrap();
            let (a, b, c, d) = (v(&r, 0), v(&r, 1), v(&r, 2), v(&r, 3));
            let cases = vec![
                &a * &b,
                &(&a * &b) + &(&c * &d),
                &(&a + &b).pow(2) + &(&c * &d),
                &(&a.pow(2) - &(&b * &c)) + &(&d * &a),
                Polynomial::zero(&r),
            ];
            for q in cases {
                let form = QuadraticForm::new(&q).unwrap();
                let (ds, ls) = form.diagonalize();
                assert_eq!(ls.len(), form.rank(), "{q}");
                assert_eq!(rebuild(&ds, &ls, &r), q);
            }
        }
    }

    #[test]
    fn rejects_other_degrees() {
        let r = RingContext::standard(FieldSpec::Rationals, 2).unwrap();
        assert!(QuadraticForm::new(&v(&r, 0)).is_err());
        assert!(QuadraticForm::new(&v(&r, 0).pow(3)).is_err());
        assert!(QuadraticForm::new(&Polynomial::one(&r)).is_err());
    }
}
