use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::engine::{ModTerm, ModVec, ModuleOrder};
use crate::ring::{check_same, Homogeneity, MonomialOrder, Polynomial, Ring};

/// A map of graded free modules `⊕ S(-col_degrees[j]) -> ⊕ S(-row_degrees[i])`.
/// Entry `(i, j)` is zero or homogeneous of degree
/// `col_degrees[j] - row_degrees[i]`.
#[derive(Clone, PartialEq, Eq)]
pub struct GradedMatrix {
    ring: Ring,
    entries: Vec<Vec<Polynomial>>,
    row_degrees: Vec<i64>,
    col_degrees: Vec<i64>,
}

impl GradedMatrix {
    pub fn new(
        ring: &Ring,
        entries: Vec<Vec<Polynomial>>,
        row_degrees: Vec<i64>,
        col_degrees: Vec<i64>,
    ) -> Result<Self> {
        if entries.len() != row_degrees.len() {
            return Err(Error::InvalidInput(format!(
                "{} rows but {} row degrees",
                entries.len(),
                row_degrees.len()
            )));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != col_degrees.len() {
                return Err(Error::InvalidInput(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    col_degrees.len()
                )));
            }
            for (j, e) in row.iter().enumerate() {
                check_same(e.ring(), ring)?;
                let want = col_degrees[j] - row_degrees[i];
                match e.homogeneity() {
                    Homogeneity::Zero => {}
                    Homogeneity::Homogeneous(d) if d as i64 == want => {}
                    _ => {
                        return Err(Error::Inhomogeneous(format!(
                            "entry ({i},{j}) = {e} is not homogeneous of degree {want}"
                        )))
                    }
                }
            }
        }
        Ok(GradedMatrix {
            ring: ring.clone(),
            entries,
            row_degrees,
            col_degrees,
        })
    }

    /// The `1 x r` matrix of generators, with row degree zero.
    pub fn row_of(ring: &Ring, gens: &[Polynomial]) -> Result<Self> {
        let mut degs = Vec::with_capacity(gens.len());
        for g in gens {
            match g.homogeneity() {
                Homogeneity::Homogeneous(d) => degs.push(d as i64),
                Homogeneity::Zero => degs.push(0),
                Homogeneity::Inhomogeneous => return Err(Error::Inhomogeneous(g.to_string())),
            }
        }
        GradedMatrix::new(ring, vec![gens.to_vec()], vec![0], degs)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.row_degrees.len()
    }

    pub fn ncols(&self) -> usize {
        self.col_degrees.len()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Polynomial>] {
        &self.entries
    }

    pub fn row_degrees(&self) -> &[i64] {
        &self.row_degrees
    }

    pub fn col_degrees(&self) -> &[i64] {
        &self.col_degrees
    }

    pub fn column(&self, j: usize) -> Vec<Polynomial> {
        self.entries.iter().map(|row| row[j].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|e| e.is_zero())
    }

    pub fn mul(&self, other: &GradedMatrix) -> Result<GradedMatrix> {
        check_same(&self.ring, &other.ring)?;
        if self.ncols() != other.nrows() {
            return Err(Error::ArityMismatch {
                expected: self.ncols(),
                got: other.nrows(),
            });
        }
        let mut entries = vec![vec![Polynomial::zero(&self.ring); other.ncols()]; self.nrows()];
        for (i, row) in entries.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                for k in 0..self.ncols() {
                    let a = &self.entries[i][k];
                    let b = &other.entries[k][j];
                    if !a.is_zero() && !b.is_zero() {
                        *e = &*e + &(a * b);
                    }
                }
            }
        }
        Ok(GradedMatrix {
            ring: self.ring.clone(),
            entries,
            row_degrees: self.row_degrees.clone(),
            col_degrees: other.col_degrees.clone(),
        })
    }

    /// Module order on the target `S^rows`, graded by the row degrees.
    pub(crate) fn target_order(&self, order: MonomialOrder) -> ModuleOrder {
        ModuleOrder {
            order,
            weights: self.ring.weights().map(|w| w.to_vec()),
            shifts: self.row_degrees.clone(),
            elim: None,
        }
    }

    pub(crate) fn column_vec(&self, j: usize, offset: usize) -> Vec<ModTerm> {
        self.entries
            .iter()
            .enumerate()
            .flat_map(|(i, row)| {
                row[j].terms().iter().map(move |t| ModTerm {
                    coeff: t.coeff.clone(),
                    mono: t.monomial.clone(),
                    comp: i + offset,
                })
            })
            .collect()
    }

    pub(crate) fn columns_as_vecs(&self, ord: &ModuleOrder) -> Vec<ModVec> {
        (0..self.ncols())
            .map(|j| ModVec::from_terms(ord, self.column_vec(j, 0)))
            .collect()
    }

    /// Builds a matrix from module elements (columns) of known degrees.
    pub(crate) fn from_columns(ring: &Ring, row_degrees: Vec<i64>, cols: &[(ModVec, i64)]) -> GradedMatrix {
        let nrows = row_degrees.len();
        let mut buckets: Vec<Vec<Vec<(crate::ring::Coeff, crate::ring::Monomial)>>> =
            vec![vec![Vec::new(); cols.len()]; nrows];
        for (j, (v, _)) in cols.iter().enumerate() {
            for t in &v.terms {
                buckets[t.comp][j].push((t.coeff.clone(), t.mono.clone()));
            }
        }
        let entries = buckets
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|terms| Polynomial::from_terms(ring, terms))
                    .collect()
            })
            .collect();
        GradedMatrix {
            ring: ring.clone(),
            entries,
            row_degrees,
            col_degrees: cols.iter().map(|(_, d)| *d).collect(),
        }
    }

    pub(crate) fn remove_row(&mut self, i: usize) {
        self.entries.remove(i);
        self.row_degrees.remove(i);
    }

    pub(crate) fn remove_col(&mut self, j: usize) {
        for row in &mut self.entries {
            row.remove(j);
        }
        self.col_degrees.remove(j);
    }

    pub(crate) fn entries_mut(&mut self) -> &mut Vec<Vec<Polynomial>> {
        &mut self.entries
    }
}

impl fmt::Debug for GradedMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GradedMatrix {}x{} rows {:?} cols {:?}", self.nrows(), self.ncols(), self.row_degrees, self.col_degrees)?;
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}
