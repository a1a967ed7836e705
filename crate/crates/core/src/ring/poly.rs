use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::field::{Coeff, FieldSpec};
use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};

/// A polynomial ring `K[x1, ..., xn]`, optionally with positive variable
/// weights (used for subalgebra presentations whose generators have
/// different degrees).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RingContext {
    field: FieldSpec,
    var_names: Vec<String>,
    weights: Option<Vec<u32>>,
}

/// Shared handle to a ring.
pub type Ring = Arc<RingContext>;

impl RingContext {
    /// A ring with the given variable names; names must be distinct
    /// identifiers and there must be at least one.
    pub fn new(field: FieldSpec, var_names: Vec<String>) -> Result<Ring> {
        if var_names.is_empty() {
            return Err(Error::InvalidInput("a ring needs at least one variable".into()));
        }
        for (i, name) in var_names.iter().enumerate() {
            if !is_identifier(name) {
                return Err(Error::InvalidInput(format!("`{name}` is not a valid variable name")));
            }
            if var_names[..i].contains(name) {
                return Err(Error::InvalidInput(format!("duplicate variable `{name}`")));
            }
        }
        Ok(Arc::new(RingContext {
            field,
            var_names,
            weights: None,
        }))
    }

    /// `K[x1..xn]`.
    pub fn standard(field: FieldSpec, n: usize) -> Result<Ring> {
        RingContext::new(field, (1..=n).map(|i| format!("x{i}")).collect())
    }

    /// Variables `<prefix>1..<prefix>n`; `n` may be zero, which is only
    /// meaningful as the source ring of a constant outer polynomial.
    pub fn symbols(field: FieldSpec, prefix: &str, n: usize, weights: Option<Vec<u32>>) -> Ring {
        if let Some(w) = &weights {
            assert_eq!(w.len(), n);
            assert!(w.iter().all(|&w| w > 0), "weights must be positive");
        }
        let weights = weights.filter(|w| w.iter().any(|&x| x != 1));
        Arc::new(RingContext {
            field,
            var_names: (1..=n).map(|i| format!("{prefix}{i}")).collect(),
            weights,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn num_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn weights(&self) -> Option<&[u32]> {
        self.weights.as_deref()
    }

    pub fn is_standard_graded(&self) -> bool {
        self.weights.is_none()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.var_names.iter().position(|v| v == name)
    }

    pub fn degree_of(&self, m: &Monomial) -> u64 {
        m.weighted_degree(self.weights())
    }

    /// Canonical (grevlex) comparison used for term storage.
    pub(crate) fn cmp_canonical(&self, a: &Monomial, b: &Monomial) -> Ordering {
        MonomialOrder::Grevlex.compare(a, b, self.weights())
    }

    /// Header line for ideal files, e.g. `ring QQ[x1,x2]`.
    pub fn header(&self) -> String {
        format!("ring {}[{}]", self.field.name(), self.var_names.join(","))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub(crate) fn same_ring(a: &Ring, b: &Ring) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub(crate) fn check_same(a: &Ring, b: &Ring) -> Result<()> {
    if same_ring(a, b) {
        Ok(())
    } else {
        Err(Error::RingMismatch)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Coeff,
    pub monomial: Monomial,
}

/// Result of [`Polynomial::homogeneity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial: homogeneous of every degree.
    Zero,
    Homogeneous(u64),
    Inhomogeneous,
}

impl Homogeneity {
    pub fn is_homogeneous(&self) -> bool {
        !matches!(self, Homogeneity::Inhomogeneous)
    }
}

/// Sparse polynomial in canonical form: nonzero coefficients, distinct
/// monomials, terms strictly descending in grevlex. Equal polynomials have
/// identical term vectors.
#[derive(Clone)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<Term>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Ring, c: Coeff) -> Self {
        Polynomial::monomial(ring, c, Monomial::one(ring.num_vars()))
    }

    pub fn one(ring: &Ring) -> Self {
        Polynomial::constant(ring, ring.field().one())
    }

    pub fn monomial(ring: &Ring, c: Coeff, m: Monomial) -> Self {
        assert_eq!(m.num_vars(), ring.num_vars());
        let terms = if c.is_zero() {
            Vec::new()
        } else {
            vec![Term { coeff: c, monomial: m }]
        };
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn var(ring: &Ring, index: usize) -> Result<Self> {
        if index >= ring.num_vars() {
            return Err(Error::IndexOutOfRange {
                index,
                num_vars: ring.num_vars(),
            });
        }
        Ok(Polynomial::monomial(
            ring,
            ring.field().one(),
            Monomial::var(ring.num_vars(), index),
        ))
    }

    /// Builds a polynomial from arbitrary terms: sorts, merges duplicates,
    /// drops zeros.
    pub fn from_terms(ring: &Ring, terms: impl IntoIterator<Item = (Coeff, Monomial)>) -> Self {
        let mut acc: HashMap<Monomial, Coeff> = HashMap::new();
        for (c, m) in terms {
            assert_eq!(m.num_vars(), ring.num_vars(), "monomial arity");
            match acc.get_mut(&m) {
                Some(existing) => *existing = &*existing + &c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|(monomial, coeff)| Term { coeff, monomial })
            .collect();
        terms.sort_by(|a, b| ring.cmp_canonical(&b.monomial, &a.monomial));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Linear form `sum coeffs[i] * x_i`.
    pub fn linear(ring: &Ring, coeffs: &[Coeff]) -> Self {
        let n = ring.num_vars();
        Polynomial::from_terms(
            ring,
            coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (c.clone(), Monomial::var(n, i))),
        )
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> FieldSpec {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.monomial.is_one())
    }

    /// Largest (weighted) term degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.iter().map(|t| self.ring.degree_of(&t.monomial)).max()
    }

    /// Largest total degree ignoring variable weights.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.monomial.degree()).max()
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degs = self.terms.iter().map(|t| self.ring.degree_of(&t.monomial));
        match degs.next() {
            None => Homogeneity::Zero,
            Some(d) => {
                if degs.all(|e| e == d) {
                    Homogeneity::Homogeneous(d)
                } else {
                    Homogeneity::Inhomogeneous
                }
            }
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneity().is_homogeneous()
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms
            .iter()
            .find(|t| &t.monomial == m)
            .map(|t| t.coeff.clone())
            .unwrap_or_else(|| self.field().zero())
    }

    /// Variables that occur in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.num_vars()];
        for t in &self.terms {
            for i in t.monomial.support() {
                used[i] = true;
            }
        }
        (0..used.len()).filter(|&i| used[i]).collect()
    }

    /// Maximal term under `order`.
    pub fn leading_term(&self, order: MonomialOrder) -> Result<(Coeff, Monomial)> {
        let w = self.ring.weights();
        self.terms
            .iter()
            .max_by(|a, b| order.compare(&a.monomial, &b.monomial, w))
            .map(|t| (t.coeff.clone(), t.monomial.clone()))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same(&self.ring, &other.ring)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same(&self.ring, &other.ring)?;
        Ok(self.merge(other, true))
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        check_same(&self.ring, &other.ring)?;
        Ok(self.product(other))
    }

    fn merge(&self, other: &Polynomial, negate: bool) -> Polynomial {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let a = &self.terms[i];
            let b = &other.terms[j];
            match self.ring.cmp_canonical(&a.monomial, &b.monomial) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        coeff: if negate { -&b.coeff } else { b.coeff.clone() },
                        monomial: b.monomial.clone(),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate { &a.coeff - &b.coeff } else { &a.coeff + &b.coeff };
                    if !c.is_zero() {
                        out.push(Term {
                            coeff: c,
                            monomial: a.monomial.clone(),
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().map(|b| Term {
            coeff: if negate { -&b.coeff } else { b.coeff.clone() },
            monomial: b.monomial.clone(),
        }));
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn product(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        // Sum of shifted copies of the longer factor, one per term of the
        // shorter, each already sorted.
        let (short, long) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Polynomial::zero(&self.ring);
        for t in &short.terms {
            acc = acc.merge(&long.mul_term(&t.coeff, &t.monomial), false);
        }
        acc
    }

    /// `c * m * self`; multiplication by a monomial preserves the order.
    pub fn mul_term(&self, c: &Coeff, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: &t.coeff * c,
                    monomial: t.monomial.mul(m),
                })
                .filter(|t| !t.coeff.is_zero())
                .collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        self.mul_term(c, &Monomial::one(self.ring.num_vars()))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.product(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.product(&base);
            }
        }
        acc
    }

    /// Divides by the leading (grevlex) coefficient.
    pub fn monic(&self) -> Polynomial {
        match self.terms.first() {
            None => self.clone(),
            Some(t) => self.scale(&t.coeff.inv()),
        }
    }

    /// Evaluates `self` at `gs` (a ring homomorphism sending the i-th
    /// variable to `gs[i]`). All `gs` must share one ring.
    pub fn substitute(&self, gs: &[Polynomial]) -> Result<Polynomial> {
        if gs.len() != self.ring.num_vars() {
            return Err(Error::ArityMismatch {
                expected: self.ring.num_vars(),
                got: gs.len(),
            });
        }
        let target = match gs.first() {
            Some(g) => g.ring.clone(),
            None => {
                return Err(Error::InvalidInput(
                    "substitution into a ring without variables needs a target ring; use substitute_into".into(),
                ))
            }
        };
        self.substitute_into(&target, gs)
    }

    /// Like [`substitute`](Self::substitute) with an explicit target ring,
    /// which also covers the case of no variables.
    pub fn substitute_into(&self, target: &Ring, gs: &[Polynomial]) -> Result<Polynomial> {
        if gs.len() != self.ring.num_vars() {
            return Err(Error::ArityMismatch {
                expected: self.ring.num_vars(),
                got: gs.len(),
            });
        }
        for g in gs {
            check_same(&g.ring, target)?;
        }
        if self.field() != target.field() {
            return Err(Error::RingMismatch);
        }
        let mut powers: Vec<Vec<Polynomial>> = gs
            .iter()
            .map(|g| vec![Polynomial::one(target), g.clone()])
            .collect();
        let mut acc = Polynomial::zero(target);
        for t in &self.terms {
            let mut prod = Polynomial::constant(target, t.coeff.clone());
            for (j, &e) in t.monomial.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[j].len() <= e as usize {
                    let next = powers[j].last().unwrap().product(&gs[j]);
                    powers[j].push(next);
                }
                prod = prod.product(&powers[j][e as usize]);
            }
            acc = acc.merge(&prod, false);
        }
        Ok(acc)
    }

    /// Formal partial derivative in variable `index`. In characteristic `p`
    /// this is still the formal derivative, so `d/dx x^p = 0`.
    pub fn partial_derivative(&self, index: usize) -> Result<Polynomial> {
        if index >= self.ring.num_vars() {
            return Err(Error::IndexOutOfRange {
                index,
                num_vars: self.ring.num_vars(),
            });
        }
        let field = self.field();
        Ok(Polynomial::from_terms(
            &self.ring,
            self.terms.iter().filter_map(|t| {
                let e = t.monomial.exponents()[index];
                if e == 0 {
                    return None;
                }
                let mut m = t.monomial.clone();
                *m.exponent_mut(index) -= 1;
                m.recompute_degree();
                Some((&t.coeff * &field.from_i64(e as i64), m))
            }),
        ))
    }

    pub fn evaluate(&self, point: &[Coeff]) -> Result<Coeff> {
        if point.len() != self.ring.num_vars() {
            return Err(Error::ArityMismatch {
                expected: self.ring.num_vars(),
                got: point.len(),
            });
        }
        let mut acc = self.field().zero();
        for t in &self.terms {
            let mut v = t.coeff.clone();
            for (x, &e) in point.iter().zip(t.monomial.exponents()) {
                if e > 0 {
                    v = &v * &x.pow(e);
                }
            }
            acc = &acc + &v;
        }
        Ok(acc)
    }

    /// Exact quotient `self / d`, if `d` divides `self`.
    pub fn div_exact(&self, d: &Polynomial) -> Result<Option<Polynomial>> {
        check_same(&self.ring, &d.ring)?;
        let Some(lead) = d.terms.first() else {
            return Err(Error::ZeroPolynomial);
        };
        let inv = lead.coeff.inv();
        let mut rem = self.clone();
        let mut quotient = Vec::new();
        while let Some(t) = rem.terms.first() {
            let Some(q) = t.monomial.div(&lead.monomial) else {
                return Ok(None);
            };
            let c = &t.coeff * &inv;
            rem = rem.merge(&d.mul_term(&c, &q), true);
            quotient.push((c, q));
        }
        Ok(Some(Polynomial::from_terms(&self.ring, quotient)))
    }

    /// Same terms, reinterpreted in another ring with as many variables and
    /// the same field.
    pub fn in_ring(&self, ring: &Ring) -> Result<Polynomial> {
        if ring.num_vars() != self.ring.num_vars() || ring.field() != self.field() {
            return Err(Error::RingMismatch);
        }
        Ok(Polynomial::from_terms(
            ring,
            self.terms.iter().map(|t| (t.coeff.clone(), t.monomial.clone())),
        ))
    }

    /// Coefficient vector over the given monomial basis; `None` if some
    /// term falls outside it.
    pub fn coefficient_vector(&self, basis: &[Monomial]) -> Option<Vec<Coeff>> {
        let mut v = vec![self.field().zero(); basis.len()];
        for t in &self.terms {
            let i = basis.iter().position(|m| m == &t.monomial)?;
            v[i] = t.coeff.clone();
        }
        Some(v)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Human-readable form, e.g. `x1^2 - 3/2*x1*x2 + 1`. The output reparses to
/// the same polynomial.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let negative = t.coeff.is_negative();
            let abs = if negative { -&t.coeff } else { t.coeff.clone() };
            if k == 0 {
                if negative {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if negative { " - " } else { " + " })?;
            }
            let mono = format_monomial(&t.monomial, self.ring.var_names());
            match (abs.is_one(), mono.is_empty()) {
                (true, true) => write!(f, "1")?,
                (true, false) => f.write_str(&mono)?,
                (false, true) => write!(f, "{abs}")?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
        }
        Ok(())
    }
}

fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{e}", names[i])),
        }
    }
    parts.join("*")
}

// Operator sugar for internal code. Mixing rings panics; the checked
// methods above return `Error::RingMismatch` instead.

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::add(self, rhs).expect("ring mismatch")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::sub(self, rhs).expect("ring mismatch")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::mul(self, rhs).expect("ring mismatch")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-&self.field().one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: usize) -> Ring {
        RingContext::standard(FieldSpec::Rationals, n).unwrap()
    }

    fn x(r: &Ring, i: usize) -> Polynomial {
        Polynomial::var(r, i).unwrap()
    }

    fn c(r: &Ring, v: i64) -> Polynomial {
        Polynomial::constant(r, r.field().from_i64(v))
    }

    #[test]
    fn cancellation_and_identity() {
        let r = q(2);
        let (x1, x2) = (x(&r, 0), x(&r, 1));
        assert_eq!(&(&x1 + &x2) + &(-&x2), x1);
        assert_eq!(&x1 + &Polynomial::zero(&r), x1);
        let f = &x1.pow(2) + &x2.pow(2);
        let g = &f + &x2.pow(2);
        assert_eq!(g, &x1.pow(2) + &x2.pow(2).scale(&r.field().from_i64(2)));
    }

    #[test]
    fn products() {
        let r = q(2);
        let (x1, x2) = (x(&r, 0), x(&r, 1));
        // phi1 * phi2 for the resolution of (x1^2, x1 x2)
        let composed = &(&x1.pow(2) * &(-&x2)) + &(&(&x1 * &x2) * &x1);
        assert!(composed.is_zero());
        assert_eq!(&(&x1 + &x2) * &(&x1 - &x2), &x1.pow(2) - &x2.pow(2));
        assert_eq!(&Polynomial::one(&r) * &x1, x1);
    }

    #[test]
    fn homogeneity() {
        let r = q(3);
        let f = &x(&r, 0).pow(3) + &(&(&x(&r, 0) * &x(&r, 1)) * &x(&r, 2));
        assert_eq!(f.homogeneity(), Homogeneity::Homogeneous(3));
        let g = &x(&r, 0).pow(3) + &x(&r, 0).pow(2);
        assert_eq!(g.homogeneity(), Homogeneity::Inhomogeneous);
        assert_eq!(Polynomial::zero(&r).homogeneity(), Homogeneity::Zero);
        assert_eq!(Polynomial::zero(&r).degree(), None);
    }

    #[test]
    fn substitution_examples() {
        let r = q(3);
        let sq = &(&x(&r, 0).pow(2) + &x(&r, 1).pow(2)) + &x(&r, 2).pow(2);
        let s1 = q(1);
        let outer = x(&s1, 0).pow(3);
        assert_eq!(outer.substitute(std::slice::from_ref(&sq)).unwrap(), sq.pow(3));
        assert_eq!(x(&s1, 0).substitute(std::slice::from_ref(&sq)).unwrap(), sq);

        let s3 = q(3);
        let f = &(&x(&s3, 0) * &x(&s3, 1)) - &x(&s3, 2);
        let r2 = q(2);
        let gs = [x(&r2, 0), x(&r2, 1), &x(&r2, 0) * &x(&r2, 1)];
        assert!(f.substitute(&gs).unwrap().is_zero());
        assert!(matches!(
            f.substitute(&gs[..2]),
            Err(Error::ArityMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn substitution_rejects_mixed_rings() {
        let s2 = q(2);
        let f = &x(&s2, 0) + &x(&s2, 1);
        let a = q(2);
        let b = RingContext::new(FieldSpec::Rationals, vec!["u".into(), "v".into()]).unwrap();
        assert_eq!(
            f.substitute(&[x(&a, 0), x(&b, 0)]),
            Err(Error::RingMismatch)
        );
    }

    #[test]
    fn derivatives() {
        let r = q(3);
        let f = &x(&r, 0).pow(3) + &(&(&x(&r, 0) * &x(&r, 1)) * &x(&r, 2));
        let expected = &x(&r, 0).pow(2).scale(&r.field().from_i64(3)) + &(&x(&r, 1) * &x(&r, 2));
        assert_eq!(f.partial_derivative(0).unwrap(), expected);
        assert!(x(&r, 0).pow(2).partial_derivative(1).unwrap().is_zero());
        assert!(f.partial_derivative(3).is_err());

        // d/dx1 of (x1 + x2)^2 expanded equals 2 (x1 + x2).
        let s = &x(&r, 0) + &x(&r, 1);
        assert_eq!(
            s.pow(2).partial_derivative(0).unwrap(),
            s.scale(&r.field().from_i64(2))
        );
    }

    #[test]
    fn leading_terms() {
        let r = q(2);
        let (x1, x2) = (x(&r, 0), x(&r, 1));
        let f = &x1.pow(2) + &(&x1 * &x2);
        assert_eq!(f.leading_term(MonomialOrder::Grevlex).unwrap().1, Monomial::from_exponents(&[2, 0]));
        let g = &x2.pow(3) + &x1.pow(2);
        assert_eq!(g.leading_term(MonomialOrder::Lex).unwrap().1, Monomial::from_exponents(&[2, 0]));
        assert_eq!(g.leading_term(MonomialOrder::Grevlex).unwrap().1, Monomial::from_exponents(&[0, 3]));
        assert_eq!(Polynomial::zero(&r).leading_term(MonomialOrder::Lex), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn exact_division() {
        let r = q(2);
        let (x1, x2) = (x(&r, 0), x(&r, 1));
        let a = &x1 + &c(&r, 2);
        let b = &x1 - &x2;
        let p = &a * &b;
        assert_eq!(p.div_exact(&b).unwrap(), Some(a.clone()));
        assert_eq!((&p + &c(&r, 1)).div_exact(&b).unwrap(), None);
    }

    #[test]
    fn display() {
        let r = q(2);
        let f = Polynomial::from_terms(
            &r,
            [
                (FieldSpec::Rationals.from_i64(1), Monomial::from_exponents(&[2, 0])),
                (
                    FieldSpec::Rationals
                        .from_ratio(&(-3).into(), &2.into())
                        .unwrap(),
                    Monomial::from_exponents(&[1, 1]),
                ),
                (FieldSpec::Rationals.from_i64(-1), Monomial::from_exponents(&[0, 0])),
            ],
        );
        assert_eq!(f.to_string(), "x1^2 - 3/2*x1*x2 - 1");
    }
}
