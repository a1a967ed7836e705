use std::collections::HashMap;

use rayon::prelude::*;

use super::quadric::{require_standard, QuadraticForm};
use super::{diagonal_witness, DecompositionWitness, NuReport, NuValue};
use crate::error::{Error, Result};
use crate::groebner::{krull_dimension, Ideal};
use crate::linalg::DenseMatrix;
use crate::ring::{check_same, Coeff, FieldSpec, Homogeneity, Monomial, Polynomial, Ring, RingContext};

/// Largest number of projective combinations enumerated over a prime field.
pub const PENCIL_ENUMERATION_CAP: u64 = 10_000_000;

/// Height bound for the search of an integer combination over ℚ.
const RATIONAL_SEARCH_HEIGHT: i64 = 4;

/// ν of a tuple of forms of degree at most 2: the minimum over nontrivial
/// homogeneous combinations. Combinations only mix members of equal
/// degree. Degree-0 members and linearly dependent classes give 0, an
/// independent linear class gives ∞, and a quadric class gives its least
/// pencil rank (exhaustive over a prime field; via minor varieties over ℚ).
pub fn nu_tuple(fs: &[Polynomial]) -> Result<NuReport> {
    let Some(first) = fs.first() else {
        return Ok(NuReport {
            value: NuValue::Infinite,
            combination: None,
            witness: None,
        });
    };
    let ring = first.ring().clone();
    require_standard(&ring)?;
    let field = ring.field();
    let mut classes: [Vec<usize>; 3] = Default::default();
    for (i, f) in fs.iter().enumerate() {
        check_same(f.ring(), &ring)?;
        let d = match f.homogeneity() {
            Homogeneity::Zero => 0,
            Homogeneity::Homogeneous(d) if d <= 2 => d as usize,
            Homogeneity::Homogeneous(d) => {
                return Err(Error::UnsupportedDegree(format!(
                    "ν is computed exactly only up to degree 2, got degree {d}"
                )))
            }
            Homogeneity::Inhomogeneous => return Err(Error::Inhomogeneous(f.to_string())),
        };
        classes[d].push(i);
    }

    let unit = |idx: &[usize], coeffs: Vec<Coeff>| -> Vec<Coeff> {
        let mut alpha = vec![field.zero(); fs.len()];
        for (&i, c) in idx.iter().zip(coeffs) {
            alpha[i] = c;
        }
        alpha
    };
    let zero_report = |alpha: Vec<Coeff>| NuReport {
        value: NuValue::Finite(0),
        combination: Some(alpha),
        witness: Some(DecompositionWitness {
            outer: Polynomial::zero(&RingContext::symbols(field, "X", 0, None)),
            inner: Vec::new(),
        }),
    };

    if let Some(&i) = classes[0].first() {
        let alpha = unit(&[i], vec![field.one()]);
        let witness = DecompositionWitness {
            outer: Polynomial::constant(
                &RingContext::symbols(field, "X", 0, None),
                fs[i].coefficient(&Monomial::one(ring.num_vars())),
            ),
            inner: Vec::new(),
        };
        return Ok(NuReport {
            value: NuValue::Finite(0),
            combination: Some(alpha),
            witness: Some(witness),
        });
    }
    for d in [1, 2] {
        if let Some(rel) = dependency(fs, &classes[d], d as u64) {
            return Ok(zero_report(unit(&classes[d], rel)));
        }
    }
    if classes[2].is_empty() {
        return Ok(NuReport {
            value: NuValue::Infinite,
            combination: None,
            witness: None,
        });
    }

    let quadrics: Vec<Polynomial> = classes[2].iter().map(|&i| fs[i].clone()).collect();
    let (rank, coeffs) = min_pencil_rank(&quadrics)?;
    let (combination, witness) = match coeffs {
        Some(c) => {
            let h = combine(&quadrics, &c);
            let (ds, ls) = QuadraticForm::new(&h)?.diagonalize();
            debug_assert_eq!(ls.len(), rank);
            (Some(unit(&classes[2], c)), Some(diagonal_witness(&ring, &ds, ls)))
        }
        None => (None, None),
    };
    Ok(NuReport {
        value: NuValue::Finite(rank),
        combination,
        witness,
    })
}

pub(crate) fn combine(fs: &[Polynomial], alpha: &[Coeff]) -> Polynomial {
    fs.iter()
        .zip(alpha)
        .fold(Polynomial::zero(fs[0].ring()), |acc, (f, a)| &acc + &f.scale(a))
}

/// A nontrivial relation among the members `idx` (all of degree `d`).
fn dependency(fs: &[Polynomial], idx: &[usize], d: u64) -> Option<Vec<Coeff>> {
    if idx.len() < 2 {
        return None;
    }
    let ring = fs[idx[0]].ring();
    let basis = crate::ring::monomials_of_degree(ring.num_vars(), d, None);
    let cols: Vec<Vec<Coeff>> = idx
        .iter()
        .map(|&i| fs[i].coefficient_vector(&basis).expect("homogeneous of degree d"))
        .collect();
    let rows = (0..basis.len())
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    DenseMatrix::new(ring.field(), rows).null_space().into_iter().next()
}

fn grams(quadrics: &[Polynomial]) -> Result<Vec<DenseMatrix>> {
    quadrics.iter().map(|q| Ok(QuadraticForm::new(q)?.gram().clone())).collect()
}

fn pencil_rank(grams: &[DenseMatrix], alpha: &[Coeff]) -> usize {
    let field = grams[0].field;
    let n = grams[0].nrows();
    let mut m = DenseMatrix::zeros(field, n, n);
    for (g, a) in grams.iter().zip(alpha) {
        if a.is_zero() {
            continue;
        }
        for i in 0..n {
            for j in 0..n {
                if !g.rows[i][j].is_zero() {
                    m.rows[i][j] = &m.rows[i][j] + &(a * &g.rows[i][j]);
                }
            }
        }
    }
    m.rank()
}

/// Least rank over nonzero combinations of linearly independent quadrics,
/// with a combination attaining it when one is found.
fn min_pencil_rank(quadrics: &[Polynomial]) -> Result<(usize, Option<Vec<Coeff>>)> {
    let field = quadrics[0].field();
    let gs = grams(quadrics)?;
    if quadrics.len() == 1 {
        return Ok((gs[0].rank(), Some(vec![field.one()])));
    }
    match field {
        FieldSpec::Prime(p) => {
            let (rank, alpha) = enumerate_projective(&gs, p)?;
            Ok((rank, Some(alpha)))
        }
        FieldSpec::Rationals => {
            let rank = min_pencil_rank_closure(quadrics)?;
            Ok((rank, search_rational(&gs, rank)))
        }
    }
}

/// Exhaustive search over the projective points of `F_p^r`, in odometer
/// order with the first nonzero coordinate normalized to 1. Ties go to the
/// earliest point.
fn enumerate_projective(gs: &[DenseMatrix], p: u32) -> Result<(usize, Vec<Coeff>)> {
    let r = gs.len() as u32;
    let total = ((p as u64).pow(r) - 1) / (p as u64 - 1);
    if total > PENCIL_ENUMERATION_CAP {
        return Err(Error::ResourceCap(format!(
            "{total} projective combinations exceed the cap of {PENCIL_ENUMERATION_CAP}"
        )));
    }
    let field = FieldSpec::Prime(p);
    let best = (0..total)
        .into_par_iter()
        .map(|idx| {
            let alpha = projective_point(idx, r as usize, p, field);
            (pencil_rank(gs, &alpha), idx)
        })
        .min()
        .expect("at least one point");
    Ok((best.0, projective_point(best.1, r as usize, p, field)))
}

pub(crate) fn projective_point(mut idx: u64, r: usize, p: u32, field: FieldSpec) -> Vec<Coeff> {
    let p64 = p as u64;
    let mut lead = 0;
    loop {
        let block = p64.pow((r - lead - 1) as u32);
        if idx < block {
            break;
        }
        idx -= block;
        lead += 1;
    }
    let mut alpha = vec![field.zero(); r];
    alpha[lead] = field.one();
    for k in (lead + 1..r).rev() {
        alpha[k] = field.from_i64((idx % p64) as i64);
        idx /= p64;
    }
    alpha
}

fn search_rational(gs: &[DenseMatrix], target: usize) -> Option<Vec<Coeff>> {
    let r = gs.len();
    let field = FieldSpec::Rationals;
    for h in 1..=RATIONAL_SEARCH_HEIGHT {
        let width = (2 * h + 1) as u64;
        let count = width.pow(r as u32);
        for idx in 0..count {
            let mut rest = idx;
            let mut ints = vec![0i64; r];
            for x in ints.iter_mut() {
                *x = (rest % width) as i64 - h;
                rest /= width;
            }
            if ints.iter().map(|x| x.abs()).max() != Some(h) {
                continue;
            }
            if ints.iter().find(|&&x| x != 0).is_some_and(|&x| x < 0) {
                continue;
            }
            let alpha: Vec<Coeff> = ints.iter().map(|&x| field.from_i64(x)).collect();
            if pencil_rank(gs, &alpha) == target {
                return Some(alpha);
            }
        }
    }
    None
}

/// Least rank of a nonzero combination over the algebraic closure: the
/// least `k` such that the `(k+1)`-minors of the generic combination
/// `sum a_i G_i` cut out a positive-dimensional (hence nonzero) locus in
/// `a`-space. The quadrics must be linearly independent for the answer to
/// be meaningful; dependent tuples report 0.
pub fn min_pencil_rank_closure(quadrics: &[Polynomial]) -> Result<usize> {
    let Some(first) = quadrics.first() else {
        return Err(Error::InvalidInput("empty pencil".into()));
    };
    let field = first.field();
    let gs = grams(quadrics)?;
    let n = first.ring().num_vars();
    let r = quadrics.len();
    let a_ring = RingContext::symbols(field, "a", r, None);
    let generic: Vec<Vec<Polynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let coeffs: Vec<Coeff> = gs.iter().map(|g| g.rows[i][j].clone()).collect();
                    Polynomial::linear(&a_ring, &coeffs)
                })
                .collect()
        })
        .collect();
    let mut minors = Minors::new(&a_ring, &generic);
    for k in 0..n {
        let gens = minors.of_size(k + 1);
        let ideal = Ideal::new(&a_ring, gens)?;
        let dim = match krull_dimension(&ideal) {
            Ok(d) => d,
            Err(Error::UnitIdeal) => 0,
            Err(e) => return Err(e),
        };
        if dim >= 1 {
            return Ok(k);
        }
    }
    Ok(n)
}

/// All minors of a square polynomial matrix, memoized by row and column
/// sets.
struct Minors<'a> {
    ring: &'a Ring,
    m: &'a [Vec<Polynomial>],
    memo: HashMap<(u32, u32), Polynomial>,
}

impl<'a> Minors<'a> {
    fn new(ring: &'a Ring, m: &'a [Vec<Polynomial>]) -> Self {
        assert!(m.len() <= 32, "minor enumeration supports at most 32 rows");
        Minors {
            ring,
            m,
            memo: HashMap::new(),
        }
    }

    fn of_size(&mut self, s: usize) -> Vec<Polynomial> {
        let n = self.m.len();
        let subsets = subsets_of_size(n, s);
        let mut out = Vec::new();
        for &rows in &subsets {
            for &cols in &subsets {
                let d = self.det(rows, cols);
                if !d.is_zero() {
                    out.push(d);
                }
            }
        }
        out
    }

    fn det(&mut self, rows: u32, cols: u32) -> Polynomial {
        if rows == 0 {
            return Polynomial::one(self.ring);
        }
        if let Some(d) = self.memo.get(&(rows, cols)) {
            return d.clone();
        }
        let r0 = rows.trailing_zeros() as usize;
        let rest = rows & (rows - 1);
        let mut acc = Polynomial::zero(self.ring);
        let mut sign_negative = false;
        let mut bits = cols;
        while bits != 0 {
            let c = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let entry = &self.m[r0][c];
            if !entry.is_zero() {
                let sub = self.det(rest, cols & !(1 << c));
                let term = entry * &sub;
                acc = if sign_negative { &acc - &term } else { &acc + &term };
            }
            sign_negative = !sign_negative;
        }
        self.memo.insert((rows, cols), acc.clone());
        acc
    }
}

fn subsets_of_size(n: usize, s: usize) -> Vec<u32> {
    (0u32..(1u32 << n)).filter(|m| m.count_ones() as usize == s).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(field: FieldSpec, n: usize) -> Ring {
        RingContext::standard(field, n).unwrap()
    }

    fn v(r: &Ring, i: usize) -> Polynomial {
        Polynomial::var(r, i).unwrap()
    }

    fn sum_squares(r: &Ring, k: usize) -> Polynomial {
        (0..k).fold(Polynomial::zero(r), |acc, i| &acc + &v(r, i).pow(2))
    }

    #[test]
    fn projective_points_cover_once() {
        let field = FieldSpec::prime(3).unwrap();
        let pts: Vec<Vec<Coeff>> = (0..13).map(|i| projective_point(i, 3, 3, field)).collect();
        assert_eq!(pts[0], vec![field.one(), field.zero(), field.zero()]);
        assert_eq!(pts[12], vec![field.zero(), field.zero(), field.one()]);
        let mut uniq = pts.clone();
        uniq.sort_by_key(|p| format!("{p:?}"));
        uniq.dedup();
        assert_eq!(uniq.len(), 13);
    }

    #[test]
    fn linear_classes() {
        let r = ring(FieldSpec::Rationals, 3);
        let xs: Vec<Polynomial> = (0..3).map(|i| v(&r, i)).collect();
        assert_eq!(nu_tuple(&xs).unwrap().value, NuValue::Infinite);
        let dep = vec![xs[0].clone(), xs[1].clone(), &xs[0] + &xs[1]];
        let rep = nu_tuple(&dep).unwrap();
        assert_eq!(rep.value, NuValue::Finite(0));
        let alpha = rep.combination.unwrap();
        assert!(combine(&dep, &alpha).is_zero());
        assert_eq!(nu_tuple(&[xs[0].clone(), Polynomial::one(&r)]).unwrap().value, NuValue::Finite(0));
    }

    #[test]
    fn pencil_of_sum_of_squares_and_product() {
        for field in [FieldSpec::Rationals, FieldSpec::prime(3).unwrap(), FieldSpec::prime(5).unwrap()] {
            let r = ring(field, 4);
            let fs = vec![sum_squares(&r, 4), &v(&r, 0) * &v(&r, 1)];
            let rep = nu_tuple(&fs).unwrap();
            assert_eq!(rep.value, NuValue::Finite(2), "{field}");
            let alpha = rep.combination.unwrap();
            let h = combine(&fs, &alpha);
            assert!(super::super::verify_witness(&h, rep.witness.as_ref().unwrap()));
            assert_eq!(min_pencil_rank_closure(&fs).unwrap(), 2);
        }
    }

    #[test]
    fn field_matters_for_enumeration() {
        // x^2 - y^2 and xy: every nonzero combination has rank 2 over F_3,
        // while a x^2 - a y^2 + b xy is singular when b^2 = -4 a^2.
        let r = ring(FieldSpec::prime(3).unwrap(), 2);
        let (x, y) = (v(&r, 0), v(&r, 1));
        let fs = vec![&x.pow(2) - &y.pow(2), &x * &y];
        assert_eq!(nu_tuple(&fs).unwrap().value, NuValue::Finite(2));
        assert_eq!(min_pencil_rank_closure(&fs).unwrap(), 1);
    }

    #[test]
    fn mixed_degrees_take_the_minimum() {
        let r = ring(FieldSpec::Rationals, 3);
        let fs = vec![v(&r, 0), sum_squares(&r, 3), &v(&r, 1) * &v(&r, 2)];
        // pencil of x1^2+x2^2+x3^2 and x2 x3 reaches rank 2
        assert_eq!(nu_tuple(&fs).unwrap().value, NuValue::Finite(2));
        assert!(nu_tuple(&[v(&r, 0).pow(3)]).is_err());
    }

    #[test]
    fn rational_witness_found_for_integral_pencil() {
        let r = ring(FieldSpec::Rationals, 3);
        let (x, y, z) = (v(&r, 0), v(&r, 1), v(&r, 2));
        let fs = vec![&x.pow(2) + &(&y * &z), &x.pow(2) + &z.pow(2)];
        let rep = nu_tuple(&fs).unwrap();
        // f1 - f2 = z(y - z) has rank 2
        assert_eq!(rep.value, NuValue::Finite(2));
        assert!(rep.combination.is_some());
    }
}
