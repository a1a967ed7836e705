//! Ideals, Gröbner bases, normal forms, initial ideals, Hilbert functions
//! and Krull dimension.

pub(crate) mod engine;
mod hilbert;

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{check_same, Monomial, MonomialOrder, Polynomial, Ring};
use engine::{GbConfig, ModTerm, ModVec, ModuleOrder};

pub use hilbert::{codimension, default_m_max, hilbert_function, krull_dimension, HilbertFunctionTable};

/// An ideal given by generators; zero generators are stripped, so the
/// zero ideal has no generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &Ring, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            check_same(g.ring(), ring)?;
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.generators.iter().all(|g| g.is_homogeneous())
    }

    pub(crate) fn require_homogeneous(&self) -> Result<()> {
        match self.generators.iter().find(|g| !g.is_homogeneous()) {
            Some(g) => Err(Error::Inhomogeneous(g.to_string())),
            None => Ok(()),
        }
    }

    /// True when every generator is a single term.
    pub fn is_monomial(&self) -> bool {
        self.generators.iter().all(|g| g.num_terms() == 1)
    }

    /// Text in the ideal-file format: ring header then one generator per
    /// line.
    pub fn to_file_text(&self) -> String {
        let mut s = self.ring.header();
        s.push('\n');
        for g in &self.generators {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

/// Reduced Gröbner basis together with the order that certifies it.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ideal: Ideal,
    order: MonomialOrder,
    basis: Vec<Polynomial>,
}

impl GroebnerBasis {
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Monic elements, ascending by leading monomial.
    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn is_unit(&self) -> bool {
        self.basis.iter().any(|g| g.is_constant())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis
            .iter()
            .map(|g| g.leading_term(self.order).expect("nonzero basis element").1)
            .collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        normal_form(f, &self.basis, self.order)
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Checks the Buchberger criterion: every S-polynomial reduces to zero.
    pub fn certify(&self) -> bool {
        let ord = ModuleOrder::ideal(self.order, self.ideal.ring.weights());
        let vecs: Vec<ModVec> = self.basis.iter().map(|g| to_modvec(g, &ord)).collect();
        for i in 0..vecs.len() {
            for j in i + 1..vecs.len() {
                let s = engine::s_vector(&vecs[i], &vecs[j], &ord).expect("same component");
                if !engine::reduce_by(&vecs, &ord, s, true).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

pub(crate) fn to_modvec(f: &Polynomial, ord: &ModuleOrder) -> ModVec {
    ModVec::from_terms(
        ord,
        f.terms()
            .iter()
            .map(|t| ModTerm {
                coeff: t.coeff.clone(),
                mono: t.monomial.clone(),
                comp: 0,
            })
            .collect(),
    )
}

pub(crate) fn from_modvec(ring: &Ring, v: &ModVec) -> Polynomial {
    Polynomial::from_terms(ring, v.terms.iter().map(|t| (t.coeff.clone(), t.mono.clone())))
}

/// Remainder of `f` on division by `divisors` (tried in list order,
/// largest term first). The remainder has no term divisible by a leading
/// monomial of a divisor.
pub fn normal_form(f: &Polynomial, divisors: &[Polynomial], order: MonomialOrder) -> Result<Polynomial> {
    for g in divisors {
        check_same(g.ring(), f.ring())?;
    }
    let ord = ModuleOrder::ideal(order, f.ring().weights());
    let basis: Vec<ModVec> = divisors
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| to_modvec(g, &ord))
        .collect();
    let r = engine::reduce_by(&basis, &ord, to_modvec(f, &ord), true);
    Ok(from_modvec(f.ring(), &r))
}

/// Reduced Gröbner basis of `ideal` under `order`.
pub fn buchberger(ideal: &Ideal, order: MonomialOrder) -> Result<GroebnerBasis> {
    let ord = ModuleOrder::ideal(order, ideal.ring.weights());
    let gens: Vec<ModVec> = ideal.generators.iter().map(|g| to_modvec(g, &ord)).collect();
    let cfg = GbConfig {
        product_criterion: true,
        ..GbConfig::default()
    };
    let out = engine::groebner(gens, &ord, &cfg)?;
    let reduced = engine::interreduce(out.basis, &ord);
    Ok(GroebnerBasis {
        ideal: ideal.clone(),
        order,
        basis: reduced.iter().map(|v| from_modvec(&ideal.ring, v)).collect(),
    })
}

/// Ideal generated by the leading monomials of a reduced basis.
pub fn initial_ideal(gb: &GroebnerBasis) -> Ideal {
    let ring = &gb.ideal.ring;
    let one = ring.field().one();
    Ideal {
        ring: ring.clone(),
        generators: gb
            .leading_monomials()
            .into_iter()
            .map(|m| Polynomial::monomial(ring, one.clone(), m))
            .collect(),
    }
}

/// Minimal monomial generators among `monos`, sorted in descending grevlex order.
pub fn minimalize_monomials(mut monos: Vec<Monomial>, ring: &Ring) -> Vec<Monomial> {
    monos.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| ring_cmp(ring, b, a)));
    monos.dedup();
    let mut keep: Vec<Monomial> = Vec::new();
    for m in monos {
        if !keep.iter().any(|k| k.divides(&m)) {
            keep.push(m);
        }
    }
    keep.sort_by(|a, b| ring_cmp(ring, b, a));
    keep
}

fn ring_cmp(ring: &Ring, a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    MonomialOrder::Grevlex.compare(a, b, ring.weights())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{FieldSpec, RingContext};

    fn ring(names: &[&str]) -> Ring {
        RingContext::new(FieldSpec::Rationals, names.iter().map(|s| s.to_string()).collect()).unwrap()
    }

    fn v(r: &Ring, i: usize) -> Polynomial {
        Polynomial::var(r, i).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(&["x1", "x2"]);
        let (x1, x2) = (v(&r, 0), v(&r, 1));
        let g = &x1.pow(2) - &x2.pow(2);
        // reducing a divisor by itself
        assert!(normal_form(&g, std::slice::from_ref(&g), MonomialOrder::Grevlex).unwrap().is_zero());
        let f = &x1.pow(2) * &x2;
        assert!(normal_form(&f, &[x1.pow(2)], MonomialOrder::Grevlex).unwrap().is_zero());
        let h = &x1.pow(2) + &x2.pow(2);
        assert_eq!(
            normal_form(&h, &[g], MonomialOrder::Grevlex).unwrap(),
            x2.pow(2).scale(&FieldSpec::Rationals.from_i64(2))
        );
    }

    #[test]
    fn monomial_ideal_is_its_own_basis() {
        let r = ring(&["x1", "x2"]);
        let (x1, x2) = (v(&r, 0), v(&r, 1));
        let i = Ideal::new(&r, vec![x1.pow(2), &x1 * &x2]).unwrap();
        let gb = buchberger(&i, MonomialOrder::Grevlex).unwrap();
        assert_eq!(gb.basis().len(), 2);
        assert!(gb.basis().contains(&x1.pow(2)));
        assert!(gb.basis().contains(&(&x1 * &x2)));
        assert_eq!(initial_ideal(&gb).generators().len(), 2);

        let single = Ideal::new(&r, vec![x1.clone()]).unwrap();
        assert_eq!(buchberger(&single, MonomialOrder::Lex).unwrap().basis(), &[x1]);
    }

    #[test]
    fn lex_basis_of_two_parabolas() {
        let r = ring(&["x", "y"]);
        let (x, y) = (v(&r, 0), v(&r, 1));
        let i = Ideal::new(&r, vec![&x.pow(2) - &y, &y.pow(2) - &x]).unwrap();
        let gb = buchberger(&i, MonomialOrder::Lex).unwrap();
        assert!(gb.certify());
        // x^4 - x = (x^2 - y)(x^2 + y) + (y^2 - x)
        assert!(gb.contains(&(&x.pow(4) - &x)).unwrap());
        assert!(!gb.contains(&x).unwrap());
        // standard monomials: y^4 leads, so 1, y, y^2, y^3 remain
        let lms = gb.leading_monomials();
        let standard = (0..6u32)
            .flat_map(|a| (0..6u32).map(move |b| Monomial::from_exponents(&[a, b])))
            .filter(|m| !lms.iter().any(|l| l.divides(m)))
            .count();
        assert_eq!(standard, 4);

        let single = Ideal::new(&r, vec![&x.pow(2) - &y]).unwrap();
        let gb = buchberger(&single, MonomialOrder::Lex).unwrap();
        assert_eq!(gb.leading_monomials(), vec![Monomial::from_exponents(&[2, 0])]);
    }
}
