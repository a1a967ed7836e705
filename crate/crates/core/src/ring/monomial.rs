use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Exponent vector with its total degree cached.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u32; 8]>,
    degree: u32,
}

impl Monomial {
    pub fn one(num_vars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, num_vars),
            degree: 0,
        }
    }

    pub fn var(num_vars: usize, index: usize) -> Self {
        let mut m = Monomial::one(num_vars);
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
            degree: exps.iter().sum(),
        }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn num_vars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Degree under variable weights; `None` means all weights are one.
    pub fn weighted_degree(&self, weights: Option<&[u32]>) -> u64 {
        match weights {
            None => self.degree as u64,
            Some(w) => self
                .exps
                .iter()
                .zip(w)
                .map(|(&e, &w)| e as u64 * w as u64)
                .sum(),
        }
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.num_vars(), other.num_vars());
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect(),
            degree: self.degree - other.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u32; 8]> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Indices of variables with positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }

    pub(crate) fn support_mask(&self) -> u64 {
        self.support()
            .filter(|&i| i < 64)
            .fold(0u64, |m, i| m | (1 << i))
    }

    pub(crate) fn exponent_mut(&mut self, index: usize) -> &mut u32 {
        &mut self.exps[index]
    }

    pub(crate) fn recompute_degree(&mut self) {
        self.degree = self.exps.iter().sum();
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// Supported monomial orders. Variables are ordered `x1 > x2 > ... > xn`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic; the canonical storage order.
    #[default]
    Grevlex,
    Lex,
    Grlex,
}

impl MonomialOrder {
    pub fn is_graded(&self) -> bool {
        !matches!(self, MonomialOrder::Lex)
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Lex => "lex",
            MonomialOrder::Grlex => "grlex",
        }
    }

    pub fn parse(name: &str) -> Option<Self> {
        match name {
            "grevlex" => Some(MonomialOrder::Grevlex),
            "lex" => Some(MonomialOrder::Lex),
            "grlex" => Some(MonomialOrder::Grlex),
            _ => None,
        }
    }

    /// Compares two monomials. Graded orders compare weighted degree first.
    pub fn compare(&self, a: &Monomial, b: &Monomial, weights: Option<&[u32]>) -> Ordering {
        match self {
            MonomialOrder::Lex => cmp_lex(a, b),
            MonomialOrder::Grlex => a
                .weighted_degree(weights)
                .cmp(&b.weighted_degree(weights))
                .then_with(|| cmp_lex(a, b)),
            MonomialOrder::Grevlex => a
                .weighted_degree(weights)
                .cmp(&b.weighted_degree(weights))
                .then_with(|| {
                    for (x, y) in a.exps.iter().zip(&b.exps).rev() {
                        if x != y {
                            return y.cmp(x);
                        }
                    }
                    Ordering::Equal
                }),
        }
    }
}

fn cmp_lex(a: &Monomial, b: &Monomial) -> Ordering {
    for (x, y) in a.exps.iter().zip(&b.exps) {
        if x != y {
            return x.cmp(y);
        }
    }
    Ordering::Equal
}

impl fmt::Display for MonomialOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// All monomials in `n` variables of the given (weighted) degree, in
/// descending lex order of the exponent vectors.
pub fn monomials_of_degree(n: usize, degree: u64, weights: Option<&[u32]>) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fill(0, degree, weights, &mut exps, &mut out);
    out
}

fn fill(i: usize, remaining: u64, weights: Option<&[u32]>, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
    let n = exps.len();
    if i == n {
        if remaining == 0 {
            out.push(Monomial::from_exponents(exps));
        }
        return;
    }
    let w = weights.map_or(1, |w| w[i] as u64).max(1);
    let mut e = remaining / w;
    loop {
        exps[i] = e as u32;
        fill(i + 1, remaining - e * w, weights, exps, out);
        if e == 0 {
            break;
        }
        e -= 1;
    }
    exps[i] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e)
    }

    #[test]
    fn grevlex_tie_break() {
        // z exponents tie; the y exponent decides and the smaller one wins.
        let xyz = m(&[1, 1, 1]);
        let x2z = m(&[2, 0, 1]);
        assert_eq!(MonomialOrder::Grevlex.compare(&x2z, &xyz, None), Ordering::Greater);
        assert_eq!(
            MonomialOrder::Grevlex.compare(&m(&[2, 0]), &m(&[1, 1]), None),
            Ordering::Greater
        );
    }

    #[test]
    fn lex_ignores_degree() {
        assert_eq!(
            MonomialOrder::Lex.compare(&m(&[2, 0]), &m(&[0, 3]), None),
            Ordering::Greater
        );
        assert_eq!(
            MonomialOrder::Grlex.compare(&m(&[2, 0]), &m(&[0, 3]), None),
            Ordering::Less
        );
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[2, 1, 0]);
        let b = m(&[1, 3, 0]);
        assert_eq!(a.lcm(&b), m(&[2, 3, 0]));
        assert!(m(&[1, 1, 0]).divides(&a));
        assert_eq!(a.div(&m(&[1, 0, 0])), Some(m(&[1, 1, 0])));
        assert!(!a.is_coprime(&b));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 0, 4])));
    }

    #[test]
    fn degree_enumeration_counts() {
        assert_eq!(monomials_of_degree(3, 2, None).len(), 6);
        assert_eq!(monomials_of_degree(4, 0, None).len(), 1);
        // weights (1,2): degree 4 monomials x^4, x^2 y, y^2
        assert_eq!(monomials_of_degree(2, 4, Some(&[1, 2])).len(), 3);
    }
}
