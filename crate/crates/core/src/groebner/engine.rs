//! Buchberger's algorithm over free modules `S^m`.
//!
//! Ideals are the rank-one case. Elements are processed in order of sugar
//! degree, which for homogeneous input is the ordinary degree; in that case
//! the engine also reports which input generators were needed, i.e. a
//! minimal generating subset.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::ring::{Coeff, Monomial, MonomialOrder};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct ModTerm {
    pub coeff: Coeff,
    pub mono: Monomial,
    pub comp: usize,
}

/// Module element, terms strictly descending in a [`ModuleOrder`].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub(crate) struct ModVec {
    pub terms: Vec<ModTerm>,
}

/// A monomial order on `S^m`: optional elimination block (components below
/// `elim` dominate), then shifted degree for graded orders, then the
/// monomial order, then lower component index first.
#[derive(Clone, Debug)]
pub(crate) struct ModuleOrder {
    pub order: MonomialOrder,
    pub weights: Option<Vec<u32>>,
    pub shifts: Vec<i64>,
    pub elim: Option<usize>,
}

impl ModuleOrder {
    pub fn ideal(order: MonomialOrder, weights: Option<&[u32]>) -> Self {
        ModuleOrder {
            order,
            weights: weights.map(|w| w.to_vec()),
            shifts: Vec::new(),
            elim: None,
        }
    }

    pub fn degree(&self, mono: &Monomial, comp: usize) -> i64 {
        mono.weighted_degree(self.weights.as_deref()) as i64 + self.shifts.get(comp).copied().unwrap_or(0)
    }

    pub fn cmp(&self, a: &Monomial, ac: usize, b: &Monomial, bc: usize) -> Ordering {
        if let Some(e) = self.elim {
            let (x, y) = (ac < e, bc < e);
            if x != y {
                return if x { Ordering::Greater } else { Ordering::Less };
            }
        }
        if self.order.is_graded() {
            let o = self.degree(a, ac).cmp(&self.degree(b, bc));
            if o != Ordering::Equal {
                return o;
            }
        }
        self.order
            .compare(a, b, self.weights.as_deref())
            .then_with(|| bc.cmp(&ac))
    }

    fn cmp_terms(&self, a: &ModTerm, b: &ModTerm) -> Ordering {
        self.cmp(&a.mono, a.comp, &b.mono, b.comp)
    }
}

impl ModVec {
    /// Sorts and merges arbitrary terms.
    pub fn from_terms(ord: &ModuleOrder, mut terms: Vec<ModTerm>) -> Self {
        terms.sort_by(|a, b| ord.cmp_terms(b, a));
        let mut out: Vec<ModTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono && last.comp == t.comp => {
                    last.coeff = &last.coeff + &t.coeff;
                }
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        ModVec { terms: out }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> &ModTerm {
        &self.terms[0]
    }

    pub fn sugar(&self, ord: &ModuleOrder) -> i64 {
        self.terms
            .iter()
            .map(|t| ord.degree(&t.mono, t.comp))
            .max()
            .unwrap_or(0)
    }

    pub fn monic(mut self) -> Self {
        if let Some(t) = self.terms.first() {
            if !t.coeff.is_one() {
                let inv = t.coeff.inv();
                for t in &mut self.terms {
                    t.coeff = &t.coeff * &inv;
                }
            }
        }
        self
    }

    pub fn scale_shift(&self, c: &Coeff, m: &Monomial) -> ModVec {
        ModVec {
            terms: self
                .terms
                .iter()
                .map(|t| ModTerm {
                    coeff: &t.coeff * c,
                    mono: t.mono.mul(m),
                    comp: t.comp,
                })
                .collect(),
        }
    }

    /// `self - other`, both sorted in `ord`.
    pub fn sub(&self, other: &ModVec, ord: &ModuleOrder) -> ModVec {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match ord.cmp_terms(&a[i], &b[j]) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(ModTerm {
                        coeff: -&b[j].coeff,
                        ..b[j].clone()
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].coeff - &b[j].coeff;
                    if !c.is_zero() {
                        out.push(ModTerm { coeff: c, ..a[i].clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|t| ModTerm {
            coeff: -&t.coeff,
            ..t.clone()
        }));
        ModVec { terms: out }
    }

    /// Re-sorts after a change of order.
    pub fn resort(self, ord: &ModuleOrder) -> ModVec {
        ModVec::from_terms(ord, self.terms)
    }
}

/// Subtracts ascending `b` from ascending `a`.
fn merge_sub_ascending(a: Vec<ModTerm>, b: Vec<ModTerm>, ord: &ModuleOrder) -> Vec<ModTerm> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut ia = a.into_iter().peekable();
    let mut ib = b.into_iter().peekable();
    loop {
        let o = match (ia.peek(), ib.peek()) {
            (Some(x), Some(y)) => ord.cmp_terms(x, y),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => break,
        };
        match o {
            Ordering::Less => out.push(ia.next().unwrap()),
            Ordering::Greater => {
                let t = ib.next().unwrap();
                out.push(ModTerm {
                    coeff: -&t.coeff,
                    ..t
                });
            }
            Ordering::Equal => {
                let x = ia.next().unwrap();
                let y = ib.next().unwrap();
                let c = &x.coeff - &y.coeff;
                if !c.is_zero() {
                    out.push(ModTerm { coeff: c, ..x });
                }
            }
        }
    }
    out
}

/// Leading-term index used for divisor lookup.
#[derive(Clone, Debug)]
struct LeadIndex {
    mono: Monomial,
    comp: usize,
    mask: u64,
}

impl LeadIndex {
    fn of(v: &ModVec) -> Self {
        let t = v.lead();
        LeadIndex {
            mono: t.mono.clone(),
            comp: t.comp,
            mask: t.mono.support_mask(),
        }
    }

    fn divides(&self, t: &ModTerm, mask: u64) -> bool {
        self.comp == t.comp && self.mask & !mask == 0 && self.mono.divides(&t.mono)
    }
}

/// Reduces `f` by `basis`, trying divisors in list order and always
/// reducing the largest remaining term first. With `full = false` only the
/// leading term is reduced.
pub(crate) fn reduce_by(basis: &[ModVec], ord: &ModuleOrder, f: ModVec, full: bool) -> ModVec {
    let leads: Vec<LeadIndex> = basis.iter().map(LeadIndex::of).collect();
    reduce_with(basis, &leads, ord, f, full)
}

fn reduce_with(basis: &[ModVec], leads: &[LeadIndex], ord: &ModuleOrder, f: ModVec, full: bool) -> ModVec {
    let mut work = f.terms;
    work.reverse();
    let mut rem = Vec::new();
    while let Some(t) = work.pop() {
        let mask = t.mono.support_mask();
        match leads.iter().position(|l| l.divides(&t, mask)) {
            Some(k) => {
                let g = &basis[k];
                let q = t.mono.div(&leads[k].mono).expect("divisor");
                let lc = &g.terms[0].coeff;
                let c = if lc.is_one() { t.coeff.clone() } else { &t.coeff * &lc.inv() };
                let scaled: Vec<ModTerm> = g.terms[1..]
                    .iter()
                    .rev()
                    .map(|s| ModTerm {
                        coeff: &s.coeff * &c,
                        mono: s.mono.mul(&q),
                        comp: s.comp,
                    })
                    .collect();
                work = merge_sub_ascending(work, scaled, ord);
            }
            None => {
                rem.push(t);
                if !full {
                    rem.extend(work.into_iter().rev());
                    break;
                }
            }
        }
    }
    ModVec { terms: rem }
}

pub(crate) struct GbOutput {
    /// Monic Gröbner basis (not inter-reduced).
    pub basis: Vec<ModVec>,
    /// Indices of inputs that were not redundant when processed. A minimal
    /// generating subset for homogeneous input.
    pub minimal_inputs: Vec<usize>,
}

pub(crate) struct GbConfig {
    /// Apply the coprime-leading-monomial criterion (valid for ideals only).
    pub product_criterion: bool,
    pub max_basis: usize,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig {
            product_criterion: false,
            max_basis: 50_000,
        }
    }
}

struct Engine<'a> {
    ord: &'a ModuleOrder,
    cfg: &'a GbConfig,
    basis: Vec<ModVec>,
    leads: Vec<LeadIndex>,
    sugar: Vec<i64>,
    pending: BTreeSet<(i64, usize, usize)>,
    pending_pairs: HashSet<(usize, usize)>,
}

impl<'a> Engine<'a> {
    fn add(&mut self, h: ModVec, sugar: i64) -> Result<()> {
        if self.basis.len() >= self.cfg.max_basis {
            return Err(Error::ResourceCap(format!(
                "Gröbner basis exceeded {} elements",
                self.cfg.max_basis
            )));
        }
        let h = h.monic();
        let lead = LeadIndex::of(&h);
        let new = self.basis.len();
        let deg_h = lead.mono.weighted_degree(self.ord.weights.as_deref()) as i64;
        for (k, lk) in self.leads.iter().enumerate() {
            if lk.comp != lead.comp {
                continue;
            }
            if self.cfg.product_criterion && lk.mono.is_coprime(&lead.mono) {
                continue;
            }
            let lcm = lk.mono.lcm(&lead.mono);
            let dl = lcm.weighted_degree(self.ord.weights.as_deref()) as i64;
            let dk = lk.mono.weighted_degree(self.ord.weights.as_deref()) as i64;
            let s = (self.sugar[k] + dl - dk).max(sugar + dl - deg_h);
            self.pending.insert((s, new, k));
            self.pending_pairs.insert((k, new));
        }
        self.basis.push(h);
        self.leads.push(lead);
        self.sugar.push(sugar);
        Ok(())
    }

    fn is_pending(&self, a: usize, b: usize) -> bool {
        self.pending_pairs.contains(&(a.min(b), a.max(b)))
    }

    /// Buchberger's chain criterion.
    fn chain_redundant(&self, i: usize, j: usize, lcm: &Monomial) -> bool {
        let comp = self.leads[i].comp;
        let mask = lcm.support_mask();
        self.leads.iter().enumerate().any(|(k, lk)| {
            k != i
                && k != j
                && lk.comp == comp
                && lk.mask & !mask == 0
                && lk.mono.divides(lcm)
                && !self.is_pending(i, k)
                && !self.is_pending(j, k)
        })
    }

    fn s_vector(&self, i: usize, j: usize, lcm: &Monomial) -> ModVec {
        let one = self.basis[i].lead().coeff.field().one();
        let a = self.basis[i].scale_shift(&one, &lcm.div(&self.leads[i].mono).unwrap());
        let b = self.basis[j].scale_shift(&one, &lcm.div(&self.leads[j].mono).unwrap());
        let mut s = a.sub(&b, self.ord);
        // Leading terms cancel exactly.
        debug_assert!(s.terms.first().is_none_or(|t| t.mono != *lcm || t.comp != self.leads[i].comp));
        s.terms.retain(|t| !t.coeff.is_zero());
        s
    }

    fn reduce(&self, f: ModVec) -> ModVec {
        reduce_with(&self.basis, &self.leads, self.ord, f, true)
    }
}

/// Runs Buchberger's algorithm with sugar selection, ties broken by pair
/// index, and both classical criteria.
pub(crate) fn groebner(gens: Vec<ModVec>, ord: &ModuleOrder, cfg: &GbConfig) -> Result<GbOutput> {
    let mut queue: Vec<(i64, usize, ModVec)> = gens
        .into_iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(i, g)| {
            let g = g.resort(ord);
            (g.sugar(ord), i, g)
        })
        .collect();
    queue.sort_by_key(|(s, i, _)| (*s, *i));
    queue.reverse();

    let mut engine = Engine {
        ord,
        cfg,
        basis: Vec::new(),
        leads: Vec::new(),
        sugar: Vec::new(),
        pending: BTreeSet::new(),
        pending_pairs: HashSet::new(),
    };
    let mut minimal_inputs = Vec::new();

    loop {
        let next_pair = engine.pending.first().copied();
        let next_input = queue.last().map(|(s, _, _)| *s);
        let take_pair = match (next_pair, next_input) {
            (Some((ps, _, _)), Some(is)) => ps <= is,
            (Some(_), None) => true,
            (None, Some(_)) => false,
            (None, None) => break,
        };
        if take_pair {
            let (s, j, i) = next_pair.unwrap();
            engine.pending.remove(&(s, j, i));
            engine.pending_pairs.remove(&(i, j));
            let lcm = engine.leads[i].mono.lcm(&engine.leads[j].mono);
            if engine.chain_redundant(i, j, &lcm) {
                continue;
            }
            let sv = engine.s_vector(i, j, &lcm);
            let h = engine.reduce(sv);
            if !h.is_zero() {
                engine.add(h, s)?;
            }
        } else {
            let (s, idx, g) = queue.pop().unwrap();
            let h = engine.reduce(g);
            if !h.is_zero() {
                minimal_inputs.push(idx);
                engine.add(h, s)?;
            }
        }
    }

    Ok(GbOutput {
        basis: engine.basis,
        minimal_inputs,
    })
}

/// Reduced Gröbner basis from any Gröbner basis: drops elements with
/// divisible leading terms, tail-reduces the rest, sorts ascending by
/// leading term.
pub(crate) fn interreduce(basis: Vec<ModVec>, ord: &ModuleOrder) -> Vec<ModVec> {
    let mut keep: Vec<ModVec> = Vec::new();
    let mut sorted = basis;
    sorted.sort_by(|a, b| ord.cmp_terms(a.lead(), b.lead()));
    for g in sorted {
        let l = g.lead();
        let mask = l.mono.support_mask();
        if keep
            .iter()
            .any(|k| LeadIndex::of(k).divides(l, mask))
        {
            continue;
        }
        keep.push(g);
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<ModVec> = keep
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let g = keep[i].clone();
        let lead = g.terms[0].clone();
        let tail = ModVec {
            terms: g.terms[1..].to_vec(),
        };
        let mut reduced = reduce_by(&others, ord, tail, true);
        reduced.terms.insert(0, lead);
        out.push(reduced.monic());
    }
    out
}

/// S-vector of two elements with the same leading component.
pub(crate) fn s_vector(a: &ModVec, b: &ModVec, ord: &ModuleOrder) -> Option<ModVec> {
    let (la, lb) = (a.lead(), b.lead());
    if la.comp != lb.comp {
        return None;
    }
    let lcm = la.mono.lcm(&lb.mono);
    let ca = la.coeff.inv();
    let cb = lb.coeff.inv();
    let x = a.scale_shift(&ca, &lcm.div(&la.mono).unwrap());
    let y = b.scale_shift(&cb, &lcm.div(&lb.mono).unwrap());
    Some(x.sub(&y, ord))
}
