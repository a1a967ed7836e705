//! Dense exact linear algebra over a coefficient field.

use crate::ring::{Coeff, FieldSpec};

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    pub field: FieldSpec,
    pub rows: Vec<Vec<Coeff>>,
}

impl DenseMatrix {
    pub fn new(field: FieldSpec, rows: Vec<Vec<Coeff>>) -> Self {
        DenseMatrix { field, rows }
    }

    pub fn zeros(field: FieldSpec, nrows: usize, ncols: usize) -> Self {
        DenseMatrix {
            field,
            rows: vec![vec![field.zero(); ncols]; nrows],
        }
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.row_reduce().len()
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn row_reduce(&mut self) -> Vec<usize> {
        let ncols = self.ncols();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..ncols {
            if row == self.rows.len() {
                break;
            }
            let Some(p) = (row..self.rows.len()).find(|&r| !self.rows[r][col].is_zero()) else {
                continue;
            };
            self.rows.swap(row, p);
            let inv = self.rows[row][col].inv();
            for x in self.rows[row].iter_mut() {
                *x = &*x * &inv;
            }
            let pivot_row = self.rows[row].clone();
            for (r, other) in self.rows.iter_mut().enumerate() {
                if r == row || other[col].is_zero() {
                    continue;
                }
                let factor = other[col].clone();
                for (x, p) in other.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x = &*x - &(&factor * p);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Basis of the right null space `{v : M v = 0}`.
    pub fn null_space(&self) -> Vec<Vec<Coeff>> {
        let ncols = self.ncols();
        let mut m = self.clone();
        let pivots = m.row_reduce();
        let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); ncols];
                v[f] = self.field.one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -&m.rows[r][f];
                }
                v
            })
            .collect()
    }

    pub fn determinant(&self) -> Coeff {
        let n = self.nrows();
        assert_eq!(n, self.ncols(), "determinant of a non-square matrix");
        let mut m = self.rows.clone();
        let mut det = self.field.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return self.field.zero();
            };
            if p != col {
                m.swap(p, col);
                det = -&det;
            }
            det = &det * &m[col][col];
            let inv = m[col][col].inv();
            for r in col + 1..n {
                if m[r][col].is_zero() {
                    continue;
                }
                let factor = &m[r][col] * &inv;
                let (top, bottom) = m.split_at_mut(r);
                for (x, y) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                    *x = &*x - &(&factor * y);
                }
            }
        }
        det
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(f: FieldSpec, rows: &[&[i64]]) -> DenseMatrix {
        DenseMatrix::new(
            f,
            rows.iter()
                .map(|r| r.iter().map(|&v| f.from_i64(v)).collect())
                .collect(),
        )
    }

    #[test]
    fn rank_and_kernel() {
        let q = FieldSpec::Rationals;
        let m = mat(q, &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ker = m.null_space();
        assert_eq!(ker.len(), 1);
        for row in &m.rows {
            let dot = row
                .iter()
                .zip(&ker[0])
                .fold(q.zero(), |acc, (a, b)| &acc + &(a * b));
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn rank_depends_on_field() {
        // det = 3, singular mod 3
        let rows: &[&[i64]] = &[&[1, 1], &[1, 4]];
        assert_eq!(mat(FieldSpec::Rationals, rows).rank(), 2);
        assert_eq!(mat(FieldSpec::Prime(3), rows).rank(), 1);
    }

    #[test]
    fn determinant() {
        let q = FieldSpec::Rationals;
        assert_eq!(mat(q, &[&[0, 1], &[1, 0]]).determinant(), q.from_i64(-1));
        assert_eq!(mat(q, &[&[2, 1, 0], &[1, 2, 1], &[0, 1, 2]]).determinant(), q.from_i64(4));
    }
}
