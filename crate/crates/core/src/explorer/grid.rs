//! Deterministic experiment grids over tuples of forms.
//!
//! Exhaustive mode (prime fields) walks every coefficient vector in
//! odometer order: the coefficients of all forms are concatenated (forms in
//! order, monomials in descending grevlex order) and the last coefficient
//! turns fastest. Sample mode draws each instance from its own ChaCha8
//! stream, numbered by the instance's global index.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::random::{random_coeff, rng_for};
use crate::error::{Error, Result};
use crate::groebner::{hilbert_function, HilbertFunctionTable, Ideal};
use crate::ring::{monomials_of_degree, Monomial, Polynomial, Ring, RingContext};
use crate::strength::{nu_tuple, NuValue};
use crate::structure::regular_sequence_report;
use crate::ring::FieldSpec;

pub const DEFAULT_CAP: u64 = 1_000_000;

/// Instances are evaluated in parallel chunks of this size and merged in
/// index order.
const CHUNK: u64 = 1 << 14;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GridMode {
    Exhaustive,
    Sample { samples: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExperimentGrid {
    pub field: FieldSpec,
    /// Inclusive range of variable counts; empty when `n_min > n_max`.
    pub n_min: usize,
    pub n_max: usize,
    pub degrees: Vec<u64>,
    pub mode: GridMode,
    pub seed: u64,
    pub cap: u64,
    /// Hilbert function length; defaults to `2 * max degree + n`.
    pub m_max: Option<u64>,
    /// Walk the instances in reverse order (results must not change).
    pub reverse: bool,
    /// Coefficient height for sampling over ℚ.
    pub height: i64,
}

impl ExperimentGrid {
    pub fn new(field: FieldSpec, n_min: usize, n_max: usize, degrees: Vec<u64>, mode: GridMode) -> Self {
        ExperimentGrid {
            field,
            n_min,
            n_max,
            degrees,
            mode,
            seed: 0,
            cap: DEFAULT_CAP,
            m_max: None,
            reverse: false,
            height: 10,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.name(),
            "n_min": self.n_min,
            "n_max": self.n_max,
            "degrees": self.degrees,
            "mode": self.mode,
            "cap": self.cap,
            "m_max": self.m_max,
            "reverse": self.reverse,
        })
    }

    fn ns(&self) -> impl Iterator<Item = usize> {
        self.n_min.max(1)..=self.n_max
    }

    fn validate(&self) -> Result<()> {
        if self.degrees.is_empty() {
            return Err(Error::InvalidInput("the grid needs at least one degree".into()));
        }
        if self.degrees.contains(&0) {
            return Err(Error::InvalidInput("grid degrees must be positive".into()));
        }
        if self.n_min == 0 && self.n_max > 0 {
            return Err(Error::InvalidInput("rings need at least one variable".into()));
        }
        Ok(())
    }

    fn shape(&self, n: usize) -> Shape {
        let ring = RingContext::standard(self.field, n).expect("n >= 1");
        let monos: Vec<Vec<Monomial>> = self.degrees.iter().map(|&d| monomials_of_degree(n, d, None)).collect();
        Shape { ring, monos }
    }

    /// Instance count per `n`, checked against the cap.
    fn counts(&self) -> Result<Vec<(usize, u64)>> {
        let mut out = Vec::new();
        let mut total: u64 = 0;
        for n in self.ns() {
            let count = match self.mode {
                GridMode::Exhaustive => {
                    let FieldSpec::Prime(p) = self.field else {
                        return Err(Error::InvalidInput("exhaustive grids need a prime field".into()));
                    };
                    let len: u32 = self.shape(n).monos.iter().map(|m| m.len() as u32).sum();
                    (p as u64).checked_pow(len).unwrap_or(u64::MAX)
                }
                GridMode::Sample { samples } => samples,
            };
            total = total.saturating_add(count);
            if total > self.cap {
                return Err(Error::ResourceCap(format!(
                    "grid has more than {} instances (n = {n} alone has {count})",
                    self.cap
                )));
            }
            out.push((n, count));
        }
        Ok(out)
    }

    /// Evaluates `f` on every instance and folds the results in index
    /// order.
    fn run<T, A>(&self, f: impl Fn(&[Polynomial]) -> Result<T> + Sync, mut fold: A) -> Result<Vec<(usize, u64)>>
    where
        T: Send,
        A: FnMut(usize, T),
    {
        self.validate()?;
        let counts = self.counts()?;
        let mut offset = 0u64;
        let pool = thread_pool();
        for &(n, count) in &counts {
            let shape = self.shape(n);
            let mut start = 0;
            while start < count {
                let end = (start + CHUNK).min(count);
                let chunk: Vec<T> = pool.install(|| {
                    (start..end)
                        .into_par_iter()
                        .map(|k| {
                            let idx = if self.reverse { count - 1 - k } else { k };
                            let fs = self.instance(&shape, idx, offset + idx);
                            f(&fs)
                        })
                        .collect::<Result<Vec<T>>>()
                })?;
                for t in chunk {
                    fold(n, t);
                }
                start = end;
            }
            offset += count;
        }
        Ok(counts)
    }

    fn instance(&self, shape: &Shape, idx: u64, global: u64) -> Vec<Polynomial> {
        let field = self.field;
        let len: usize = shape.monos.iter().map(|m| m.len()).sum();
        let coeffs: Vec<_> = match self.mode {
            GridMode::Exhaustive => {
                let p = field.characteristic() as u64;
                let mut rest = idx;
                let mut digits = vec![field.zero(); len];
                for slot in digits.iter_mut().rev() {
                    *slot = field.from_i64((rest % p) as i64);
                    rest /= p;
                }
                digits
            }
            GridMode::Sample { .. } => {
                let mut rng = rng_for(self.seed, global);
                (0..len).map(|_| random_coeff(&mut rng, field, self.height)).collect()
            }
        };
        let mut it = coeffs.into_iter();
        shape
            .monos
            .iter()
            .map(|monos| {
                Polynomial::from_terms(&shape.ring, monos.iter().map(|m| (it.next().unwrap(), m.clone())))
            })
            .collect()
    }
}

struct Shape {
    ring: Ring,
    monos: Vec<Vec<Monomial>>,
}

/// Worker pool sized by `SALAB_THREADS` when set to a positive integer.
pub fn thread_pool() -> rayon::ThreadPool {
    let threads = std::env::var("SALAB_THREADS")
        .ok()
        .and_then(|v| v.trim().parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or(0);
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("thread pool")
}

/// Distinct Hilbert functions for one number of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HfCount {
    pub n: usize,
    pub instances: u64,
    pub tables: BTreeMap<HilbertFunctionTable, u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HfEnumeration {
    pub per_n: Vec<HfCount>,
}

impl HfEnumeration {
    pub fn distinct(&self) -> usize {
        self.per_n.iter().map(|c| c.tables.len()).sum()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "distinct_total": self.distinct(),
            "by_n": self.per_n.iter().map(|c| json!({
                "n": c.n,
                "instances": c.instances,
                "distinct": c.tables.len(),
                "tables": c.tables.iter().map(|(t, k)| json!({"hf": t.values, "count": k})).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Collects the distinct Hilbert functions of `S/(f_1, ..., f_r)` over the
/// grid.
pub fn enumerate_hilbert_functions(grid: &ExperimentGrid) -> Result<HfEnumeration> {
    let max_d = grid.degrees.iter().copied().max().unwrap_or(0);
    let mut tables: BTreeMap<usize, BTreeMap<HilbertFunctionTable, u64>> = BTreeMap::new();
    let counts = grid.run(
        |fs| {
            let ring = fs[0].ring();
            let m = grid.m_max.unwrap_or(2 * max_d + ring.num_vars() as u64);
            hilbert_function(&Ideal::new(ring, fs.to_vec())?, m)
        },
        |n, hf| *tables.entry(n).or_default().entry(hf).or_insert(0) += 1,
    )?;
    Ok(HfEnumeration {
        per_n: counts
            .into_iter()
            .map(|(n, instances)| HfCount {
                n,
                instances,
                tables: tables.remove(&n).unwrap_or_default(),
            })
            .collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdRow {
    pub n: usize,
    pub instances: u64,
    /// `(ν, regular) -> count`.
    pub histogram: BTreeMap<(NuValue, bool), u64>,
}

impl ThresholdRow {
    pub fn max_nu_non_regular(&self) -> Option<NuValue> {
        self.histogram.keys().filter(|(_, r)| !r).map(|(v, _)| *v).max()
    }

    pub fn min_nu_regular(&self) -> Option<NuValue> {
        self.histogram.keys().filter(|(_, r)| *r).map(|(v, _)| *v).min()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThresholdExploration {
    pub rows: Vec<ThresholdRow>,
}

impl ThresholdExploration {
    pub fn to_json(&self) -> Value {
        let nu = |v: Option<NuValue>| v.map_or(Value::Null, super::json::nu);
        json!({
            "by_n": self.rows.iter().map(|r| json!({
                "n": r.n,
                "instances": r.instances,
                "max_nu_non_regular": nu(r.max_nu_non_regular()),
                "min_nu_regular": nu(r.min_nu_regular()),
                "histogram": r.histogram.iter().map(|((v, reg), k)| json!({
                    "nu": super::json::nu(*v),
                    "regular": reg,
                    "count": k,
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Records `(ν, regular?)` for every quadric tuple of the grid.
pub fn explore_threshold(grid: &ExperimentGrid) -> Result<ThresholdExploration> {
    if grid.degrees.iter().any(|&d| d != 2) {
        return Err(Error::InvalidInput(
            "threshold exploration needs a grid of quadrics (all degrees 2)".into(),
        ));
    }
    let mut hist: BTreeMap<usize, BTreeMap<(NuValue, bool), u64>> = BTreeMap::new();
    let counts = grid.run(
        |fs| {
            let nu = nu_tuple(fs)?.value;
            let regular = regular_sequence_report(fs)?.regular;
            Ok((nu, regular))
        },
        |n, key| *hist.entry(n).or_default().entry(key).or_insert(0) += 1,
    )?;
    Ok(ThresholdExploration {
        rows: counts
            .into_iter()
            .map(|(n, instances)| ThresholdRow {
                n,
                instances,
                histogram: hist.remove(&n).unwrap_or_default(),
            })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldSpec {
        FieldSpec::prime(3).unwrap()
    }

    #[test]
    fn single_form_has_two_hilbert_functions() {
        for n in 1..=3 {
            let grid = ExperimentGrid::new(f3(), n, n, vec![2], GridMode::Exhaustive);
            assert_eq!(enumerate_hilbert_functions(&grid).unwrap().distinct(), 2);
        }
    }

    #[test]
    fn reverse_order_gives_the_same_set() {
        let mut grid = ExperimentGrid::new(f3(), 2, 2, vec![2, 2], GridMode::Exhaustive);
        let a = enumerate_hilbert_functions(&grid).unwrap();
        grid.reverse = true;
        let b = enumerate_hilbert_functions(&grid).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.per_n[0].instances, 729);
    }

    #[test]
    fn empty_grid() {
        let grid = ExperimentGrid::new(f3(), 3, 2, vec![2], GridMode::Exhaustive);
        assert!(enumerate_hilbert_functions(&grid).unwrap().per_n.is_empty());
    }

    #[test]
    fn cap_enforced() {
        let mut grid = ExperimentGrid::new(f3(), 4, 4, vec![2, 2], GridMode::Exhaustive);
        assert!(matches!(enumerate_hilbert_functions(&grid), Err(Error::ResourceCap(_))));
        grid.cap = 10;
        grid.mode = GridMode::Sample { samples: 11 };
        assert!(matches!(enumerate_hilbert_functions(&grid), Err(Error::ResourceCap(_))));
    }

    #[test]
    fn threshold_exploration_small() {
        let grid = ExperimentGrid::new(f3(), 2, 2, vec![2, 2], GridMode::Exhaustive);
        let t = explore_threshold(&grid).unwrap();
        let row = &t.rows[0];
        // a repeated or zero member gives ν = 0 and never a regular sequence
        assert!(row.histogram.contains_key(&(NuValue::Finite(0), false)));
        assert!(!row.histogram.contains_key(&(NuValue::Finite(0), true)));
        assert_eq!(row.histogram.values().sum::<u64>(), 729);
        let linear = ExperimentGrid::new(f3(), 2, 2, vec![1, 1], GridMode::Exhaustive);
        assert!(explore_threshold(&linear).is_err());
    }

    #[test]
    fn sampling_is_deterministic() {
        let mut grid = ExperimentGrid::new(FieldSpec::Rationals, 2, 3, vec![2], GridMode::Sample { samples: 20 });
        grid.seed = 11;
        let a = enumerate_hilbert_functions(&grid).unwrap();
        let b = enumerate_hilbert_functions(&grid).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }
}
