//! Graded free resolutions: syzygies, minimalization, Betti tables,
//! projective dimension, and the Koszul test for regular sequences.

mod matrix;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groebner::engine::{self, GbConfig, ModTerm, ModVec, ModuleOrder};
use crate::groebner::Ideal;
use crate::ring::{check_same, Homogeneity, Monomial, MonomialOrder, Polynomial, Ring};

pub use matrix::GradedMatrix;

/// Options for [`resolve`].
#[derive(Clone, Debug)]
pub struct ResolveOptions {
    pub order: MonomialOrder,
    /// Largest rank allowed for any free module in the resolution.
    pub max_rank: usize,
    /// Test hook: replaces the first syzygy at every step by a multiple of
    /// it, producing a complex that is not exact.
    pub perturb_syzygies: bool,
}

impl Default for ResolveOptions {
    fn default() -> Self {
        ResolveOptions {
            order: MonomialOrder::Grevlex,
            max_rank: 5000,
            perturb_syzygies: false,
        }
    }
}

/// `0 <- S <- F_1 <- F_2 <- ... <- F_L <- 0`, with `maps[i]` the matrix of
/// `F_{i+1} -> F_i`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    ring: Ring,
    maps: Vec<GradedMatrix>,
}

/// Outcome of [`FreeResolution::verify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExactnessReport {
    /// Every composition of consecutive maps vanishes.
    pub is_complex: bool,
    /// Every kernel equals the image of the next map.
    pub is_exact: bool,
}

impl FreeResolution {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn maps(&self) -> &[GradedMatrix] {
        &self.maps
    }

    /// `[rank F_0, rank F_1, ...]`.
    pub fn ranks(&self) -> Vec<usize> {
        let mut r = vec![1];
        r.extend(self.maps.iter().map(|m| m.ncols()));
        r
    }

    /// Index of the last nonzero free module.
    pub fn length(&self) -> usize {
        self.maps.len()
    }

    pub fn verify(&self) -> Result<ExactnessReport> {
        self.verify_with(MonomialOrder::Grevlex)
    }

    pub fn verify_with(&self, order: MonomialOrder) -> Result<ExactnessReport> {
        let mut is_complex = true;
        for w in self.maps.windows(2) {
            if !w[0].mul(&w[1])?.is_zero() {
                is_complex = false;
            }
        }
        let mut is_exact = is_complex;
        if is_exact {
            for (i, phi) in self.maps.iter().enumerate() {
                let kernel = syzygies(phi, order)?;
                let image_ok = match self.maps.get(i + 1) {
                    None => kernel.ncols() == 0,
                    Some(next) => columns_in_image(&kernel, next, order)?,
                };
                if !image_ok {
                    is_exact = false;
                    break;
                }
            }
        }
        Ok(ExactnessReport { is_complex, is_exact })
    }
}

/// Does every column of `a` lie in the column span of `b` (same target)?
fn columns_in_image(a: &GradedMatrix, b: &GradedMatrix, order: MonomialOrder) -> Result<bool> {
    let ord = b.target_order(order);
    let gens = b.columns_as_vecs(&ord);
    let gb = engine::groebner(gens, &ord, &GbConfig::default())?.basis;
    Ok(a
        .columns_as_vecs(&ord)
        .into_iter()
        .all(|v| engine::reduce_by(&gb, &ord, v, false).is_zero()))
}

/// Minimal homogeneous generators of the kernel of `m`, as the columns of a
/// graded matrix whose row degrees are the column degrees of `m`.
pub fn syzygies(m: &GradedMatrix, order: MonomialOrder) -> Result<GradedMatrix> {
    let b = m.nrows();
    let k = m.ncols();
    let ring = m.ring();
    let one = ring.field().one();
    let weights = ring.weights().map(|w| w.to_vec());

    // Graph module spanned by (column_j, e_j) inside S^b ⊕ S^k; the part of
    // an elimination basis living in S^k generates the kernel.
    let mut shifts = m.row_degrees().to_vec();
    shifts.extend_from_slice(m.col_degrees());
    let graph = ModuleOrder {
        order,
        weights: weights.clone(),
        shifts,
        elim: Some(b),
    };
    let gens: Vec<ModVec> = (0..k)
        .map(|j| {
            let mut terms = m.column_vec(j, 0);
            terms.push(ModTerm {
                coeff: one.clone(),
                mono: Monomial::one(ring.num_vars()),
                comp: b + j,
            });
            ModVec::from_terms(&graph, terms)
        })
        .collect();
    let gb = engine::groebner(gens, &graph, &GbConfig::default())?.basis;

    let target = ModuleOrder {
        order,
        weights,
        shifts: m.col_degrees().to_vec(),
        elim: None,
    };
    let kernel: Vec<ModVec> = gb
        .into_iter()
        .filter(|v| v.lead().comp >= b)
        .map(|v| {
            debug_assert!(v.terms.iter().all(|t| t.comp >= b));
            let terms = v
                .terms
                .into_iter()
                .map(|t| ModTerm { comp: t.comp - b, ..t })
                .collect();
            ModVec::from_terms(&target, terms)
        })
        .collect();
    let minimal = engine::groebner(kernel.clone(), &target, &GbConfig::default())?.minimal_inputs;
    let cols: Vec<(ModVec, i64)> = minimal
        .into_iter()
        .map(|i| {
            let v = kernel[i].clone();
            let d = v.sugar(&target);
            (v, d)
        })
        .collect();
    Ok(GradedMatrix::from_columns(ring, m.col_degrees().to_vec(), &cols))
}

fn check_proper(ideal: &Ideal) -> Result<()> {
    ideal.require_homogeneous()?;
    if ideal.generators().iter().any(|g| g.is_constant()) {
        return Err(Error::UnitIdeal);
    }
    Ok(())
}

/// A graded free resolution of `S/I` built from the given generators,
/// each later step using minimal kernel generators. Not necessarily
/// minimal at the first step; see [`minimalize`].
pub fn resolve(ideal: &Ideal, opts: &ResolveOptions) -> Result<FreeResolution> {
    check_proper(ideal)?;
    let ring = ideal.ring().clone();
    let mut maps = Vec::new();
    if ideal.is_zero() {
        return Ok(FreeResolution { ring, maps });
    }
    let first = GradedMatrix::row_of(&ring, ideal.generators())?;
    if first.ncols() > opts.max_rank {
        return Err(rank_cap(opts.max_rank, 1, first.ncols()));
    }
    maps.push(first);
    // Non-minimal first maps can add one trivial step beyond the syzygy
    // bound; anything longer is a bug.
    let bound = ring.num_vars() + 1;
    loop {
        let last = maps.last().unwrap();
        let mut next = syzygies(last, opts.order)?;
        if next.ncols() == 0 {
            break;
        }
        if next.ncols() > opts.max_rank {
            return Err(rank_cap(opts.max_rank, maps.len() + 1, next.ncols()));
        }
        if opts.perturb_syzygies {
            perturb(&mut next);
        }
        maps.push(next);
        if maps.len() > bound {
            return Err(Error::Invariant(format!(
                "resolution longer than {bound} over {} variables",
                ring.num_vars()
            )));
        }
    }
    Ok(FreeResolution { ring, maps })
}

fn rank_cap(cap: usize, step: usize, rank: usize) -> Error {
    Error::ResourceCap(format!("rank {rank} of F_{step} exceeds the cap of {cap}"))
}

fn perturb(m: &mut GradedMatrix) {
    let ring = m.ring().clone();
    let n = ring.num_vars();
    let x = Polynomial::var(&ring, n - 1).expect("ring has variables");
    let w = ring.weights().map_or(1, |w| w[n - 1]) as i64;
    let mut entries = m.entries().to_vec();
    for row in &mut entries {
        row[0] = &row[0] * &x;
    }
    let mut cols = m.col_degrees().to_vec();
    cols[0] += w;
    *m = GradedMatrix::new(&ring, entries, m.row_degrees().to_vec(), cols).expect("degrees shift uniformly");
}

/// Graded Betti numbers `beta_{i,j}`: the number of generators of degree
/// `j` in `F_i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), usize>,
}

#[derive(Serialize)]
struct BettiEntry {
    i: usize,
    j: i64,
    beta: usize,
}

impl Serialize for BettiTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let list: Vec<BettiEntry> = self
            .entries
            .iter()
            .map(|(&(i, j), &beta)| BettiEntry { i, j, beta })
            .collect();
        list.serialize(s)
    }
}

impl BettiTable {
    pub fn of(res: &FreeResolution) -> Self {
        let mut entries = BTreeMap::new();
        entries.insert((0, 0), 1);
        for (k, m) in res.maps.iter().enumerate() {
            for &d in m.col_degrees() {
                *entries.entry((k + 1, d)).or_insert(0) += 1;
            }
        }
        BettiTable { entries }
    }

    pub fn get(&self, i: usize, j: i64) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero entries `((i, j), beta_{i,j})` in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, i64), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    /// `beta_i = sum_j beta_{i,j}`.
    pub fn totals(&self) -> Vec<usize> {
        let len = self.entries.keys().map(|&(i, _)| i + 1).max().unwrap_or(0);
        let mut t = vec![0; len];
        for (&(i, _), &b) in &self.entries {
            t[i] += b;
        }
        t
    }

    pub fn projective_dimension(&self) -> usize {
        self.totals().len().saturating_sub(1)
    }
}

impl fmt::Display for BettiTable {
    /// Rows indexed by `j - i`, columns by `i`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols = self.totals().len();
        let shifts: Vec<i64> = {
            let mut s: Vec<i64> = self.entries.keys().map(|&(i, j)| j - i as i64).collect();
            s.sort_unstable();
            s.dedup();
            s
        };
        write!(f, "{:>6}", "")?;
        for i in 0..cols {
            write!(f, "{i:>6}")?;
        }
        writeln!(f)?;
        write!(f, "{:>6}", "total:")?;
        for t in self.totals() {
            write!(f, "{t:>6}")?;
        }
        writeln!(f)?;
        for s in shifts {
            write!(f, "{:>6}", format!("{s}:"))?;
            for i in 0..cols {
                match self.get(i, s + i as i64) {
                    0 => write!(f, "{:>6}", ".")?,
                    b => write!(f, "{b:>6}")?,
                }
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Cancels every unit entry, yielding a minimal resolution of the same
/// module together with its Betti table.
pub fn minimalize(res: &FreeResolution) -> Result<(FreeResolution, BettiTable)> {
    let mut maps = res.maps.clone();
    while let Some((i, r, c)) = find_unit(&maps) {
        cancel_unit(&mut maps, i, r, c)?;
        while maps.last().is_some_and(|m| m.ncols() == 0) {
            maps.pop();
        }
    }
    let out = FreeResolution {
        ring: res.ring.clone(),
        maps,
    };
    let table = BettiTable::of(&out);
    Ok((out, table))
}

fn find_unit(maps: &[GradedMatrix]) -> Option<(usize, usize, usize)> {
    for (i, m) in maps.iter().enumerate() {
        for c in 0..m.ncols() {
            for r in 0..m.nrows() {
                let e = m.entry(r, c);
                if !e.is_zero() && e.is_constant() {
                    return Some((i, r, c));
                }
            }
        }
    }
    None
}

/// Splits off the trivial summand `S(-d) --u--> S(-d)` at entry `(r, c)` of
/// `maps[i]`.
fn cancel_unit(maps: &mut [GradedMatrix], i: usize, r: usize, c: usize) -> Result<()> {
    if i == 0 {
        return Err(Error::UnitIdeal);
    }
    let u_inv = maps[i].entry(r, c).terms()[0].coeff.inv();
    let ncols = maps[i].ncols();
    let factors: Vec<Polynomial> = (0..ncols)
        .map(|k| maps[i].entry(r, k).scale(&u_inv))
        .collect();

    // Column operations col_k -= a_k col_c on maps[i] ...
    {
        let pivot_col = maps[i].column(c);
        let entries = maps[i].entries_mut();
        for (k, a) in factors.iter().enumerate() {
            if k == c || a.is_zero() {
                continue;
            }
            for (row, p) in entries.iter_mut().zip(&pivot_col) {
                row[k] = &row[k] - &(a * p);
            }
        }
    }
    // ... compensated by row_c += sum_k a_k row_k on maps[i + 1].
    if let Some(next) = maps.get_mut(i + 1) {
        let entries = next.entries_mut();
        let mut new_row = entries[c].clone();
        for (k, a) in factors.iter().enumerate() {
            if k == c || a.is_zero() {
                continue;
            }
            for (dst, src) in new_row.iter_mut().zip(&entries[k]) {
                *dst = &*dst + &(a * src);
            }
        }
        entries[c] = new_row;
        if entries[c].iter().any(|e| !e.is_zero()) {
            return Err(Error::Invariant(format!("row {c} of map {} does not vanish after cancellation", i + 2)));
        }
        next.remove_row(c);
    }
    maps[i].remove_row(r);
    maps[i].remove_col(c);
    maps[i - 1].remove_col(r);
    Ok(())
}

/// Minimal graded free resolution of `S/I` and its Betti table.
pub fn minimal_resolution(ideal: &Ideal, opts: &ResolveOptions) -> Result<(FreeResolution, BettiTable)> {
    let res = resolve(ideal, opts)?;
    let (min, table) = minimalize(&res)?;
    let n = ideal.ring().num_vars();
    if min.length() > n {
        return Err(Error::Invariant(format!(
            "minimal resolution has length {} over {n} variables",
            min.length()
        )));
    }
    Ok((min, table))
}

pub fn betti_table(ideal: &Ideal) -> Result<BettiTable> {
    Ok(minimal_resolution(ideal, &ResolveOptions::default())?.1)
}

/// `pd_S(S/I)`, the length of a minimal free resolution.
pub fn projective_dimension(ideal: &Ideal) -> Result<usize> {
    Ok(minimal_resolution(ideal, &ResolveOptions::default())?.0.length())
}

/// Largest tuple accepted by [`koszul_check`].
pub const KOSZUL_MAX: usize = 20;

/// True when the syzygies of `fs` are generated by the Koszul relations
/// `f_j e_i - f_i e_j`, i.e. when `fs` is a regular sequence.
pub fn koszul_check(fs: &[Polynomial]) -> Result<bool> {
    if fs.len() > KOSZUL_MAX {
        return Err(Error::InvalidInput(format!(
            "Koszul test supports at most {KOSZUL_MAX} polynomials, got {}",
            fs.len()
        )));
    }
    let Some(first) = fs.first() else {
        return Ok(true);
    };
    let ring = first.ring().clone();
    let mut degs = Vec::with_capacity(fs.len());
    for f in fs {
        check_same(f.ring(), &ring)?;
        match f.homogeneity() {
            Homogeneity::Zero => return Ok(false),
            Homogeneity::Inhomogeneous => return Err(Error::Inhomogeneous(f.to_string())),
            Homogeneity::Homogeneous(0) => {
                return Err(Error::UnsupportedDegree(format!("constant {f} in a regular sequence test")))
            }
            Homogeneity::Homogeneous(d) => degs.push(d as i64),
        }
    }
    let row = GradedMatrix::new(&ring, vec![fs.to_vec()], vec![0], degs.clone())?;
    let kernel = syzygies(&row, MonomialOrder::Grevlex)?;

    let r = fs.len();
    let zero = Polynomial::zero(&ring);
    let mut cols = Vec::new();
    let mut col_degs = Vec::new();
    for i in 0..r {
        for j in i + 1..r {
            let mut col = vec![zero.clone(); r];
            col[i] = fs[j].clone();
            col[j] = -&fs[i];
            cols.push(col);
            col_degs.push(degs[i] + degs[j]);
        }
    }
    let entries = (0..r).map(|row| cols.iter().map(|c| c[row].clone()).collect()).collect();
    let koszul = GradedMatrix::new(&ring, entries, degs, col_degs)?;
    columns_in_image(&kernel, &koszul, MonomialOrder::Grevlex)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{FieldSpec, RingContext};

    fn q(n: usize) -> Ring {
        RingContext::standard(FieldSpec::Rationals, n).unwrap()
    }

    fn v(r: &Ring, i: usize) -> Polynomial {
        Polynomial::var(r, i).unwrap()
    }

    #[test]
    fn two_monomials() {
        let r = q(2);
        let (x1, x2) = (v(&r, 0), v(&r, 1));
        let i = Ideal::new(&r, vec![x1.pow(2), &x1 * &x2]).unwrap();
        let res = resolve(&i, &ResolveOptions::default()).unwrap();
        assert_eq!(res.ranks(), vec![1, 2, 1]);
        let phi2 = &res.maps()[1];
        let col = phi2.column(0);
        let expected = vec![-&x2, x1.clone()];
        let neg: Vec<Polynomial> = expected.iter().map(|p| -p).collect();
        assert!(col == expected || col == neg, "{phi2:?}");
        assert_eq!(res.verify().unwrap(), ExactnessReport { is_complex: true, is_exact: true });
        assert_eq!(projective_dimension(&i).unwrap(), 2);
    }

    #[test]
    fn principal_ideal() {
        let r = q(3);
        let i = Ideal::new(&r, vec![v(&r, 0)]).unwrap();
        assert_eq!(projective_dimension(&i).unwrap(), 1);
        let zero = Ideal::new(&r, vec![]).unwrap();
        assert_eq!(projective_dimension(&zero).unwrap(), 0);
    }

    #[test]
    fn koszul_betti_numbers() {
        for n in 1..=4 {
            let r = q(n);
            let i = Ideal::new(&r, (0..n).map(|j| v(&r, j)).collect()).unwrap();
            let t = betti_table(&i).unwrap();
            let binom: Vec<usize> = (0..=n).map(|k| binomial(n, k)).collect();
            assert_eq!(t.totals(), binom);
            for k in 0..=n {
                assert_eq!(t.get(k, k as i64), binomial(n, k));
            }
        }
    }

    fn binomial(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn redundant_generator_is_cancelled() {
        let r = q(2);
        let (x, y) = (v(&r, 0), v(&r, 1));
        let redundant = Ideal::new(&r, vec![x.clone(), y.clone(), &x + &y]).unwrap();
        let plain = Ideal::new(&r, vec![x.clone(), y.clone()]).unwrap();
        let res = resolve(&redundant, &ResolveOptions::default()).unwrap();
        assert!(res.verify().unwrap().is_exact);
        let (_, t) = minimalize(&res).unwrap();
        assert_eq!(t, betti_table(&plain).unwrap());

        let one_var = q(1);
        let x = v(&one_var, 0);
        let doubled = Ideal::new(&one_var, vec![x.clone(), x.scale(&FieldSpec::Rationals.from_i64(2))]).unwrap();
        assert_eq!(projective_dimension(&doubled).unwrap(), 1);
    }

    #[test]
    fn perturbation_breaks_exactness() {
        let r = q(2);
        let (x1, x2) = (v(&r, 0), v(&r, 1));
        let i = Ideal::new(&r, vec![x1.pow(2), &x1 * &x2]).unwrap();
        let opts = ResolveOptions {
            perturb_syzygies: true,
            ..ResolveOptions::default()
        };
        let res = resolve(&i, &opts).unwrap();
        let rep = res.verify().unwrap();
        assert!(rep.is_complex);
        assert!(!rep.is_exact);
    }

    #[test]
    fn koszul_examples() {
        let r = q(3);
        let (x, y, z) = (v(&r, 0), v(&r, 1), v(&r, 2));
        assert!(koszul_check(&[x.clone(), y.clone(), z.clone()]).unwrap());
        assert!(!koszul_check(&[&x * &y, &x * &z]).unwrap());
        assert!(koszul_check(&[x.pow(2), y.pow(3)]).unwrap());
        assert!(!koszul_check(&[x.clone(), Polynomial::zero(&r)]).unwrap());
        assert!(matches!(koszul_check(&[Polynomial::one(&r)]), Err(Error::UnsupportedDegree(_))));
    }

    #[test]
    fn resolve_over_prime_field() {
        let r = RingContext::standard(FieldSpec::prime(7).unwrap(), 3).unwrap();
        let (x, y, z) = (v(&r, 0), v(&r, 1), v(&r, 2));
        let i = Ideal::new(&r, vec![&x * &y, &y * &z, &x * &z]).unwrap();
        let (min, t) = minimal_resolution(&i, &ResolveOptions::default()).unwrap();
        assert_eq!(t.totals(), vec![1, 3, 2]);
        assert!(min.verify().unwrap().is_exact);
        assert!(t.to_string().contains("total:"));
    }

    #[test]
    fn unit_ideal_refused() {
        let r = q(2);
        let i = Ideal::new(&r, vec![Polynomial::one(&r)]).unwrap();
        assert_eq!(projective_dimension(&i), Err(Error::UnitIdeal));
    }
}
