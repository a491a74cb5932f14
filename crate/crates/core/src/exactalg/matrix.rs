use std::cmp::Ordering;

use crate::error::{Error, Result};

use super::Field;

/// A dense rectangular matrix over a single field instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, data }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = m.field.one();
        }
        m
    }

    /// Builds a matrix from rows, which must all have length `cols`.
    pub fn from_rows(field: F, cols: usize, rows: Vec<Vec<F::Elem>>) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
        }
        let nrows = rows.len();
        for row in rows {
            data.extend(row);
        }
        Ok(Matrix { field, rows: nrows, cols, data })
    }

    pub fn from_i64_rows(field: F, rows: &[&[i64]]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, cols, rows)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[F::Elem]> {
        (0..self.rows).map(move |r| self.row(r))
    }

    /// Row-major entries.
    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn is_zero_row(&self, r: usize) -> bool {
        self.row(r).iter().all(|e| self.field.is_zero(e))
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} columns on {} columns",
                other.cols, self.cols
            )));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Appends a single row.
    pub fn push_row(&mut self, row: Vec<F::Elem>) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "row has {} entries, expected {}",
                row.len(),
                self.cols
            )));
        }
        self.data.extend(row);
        self.rows += 1;
        Ok(())
    }

    /// Drops every zero row.
    pub fn without_zero_rows(&self) -> Self {
        let keep: Vec<usize> = (0..self.rows).filter(|&r| !self.is_zero_row(r)).collect();
        let mut data = Vec::with_capacity(keep.len() * self.cols);
        for &r in &keep {
            data.extend_from_slice(self.row(r));
        }
        Matrix { field: self.field.clone(), rows: keep.len(), cols: self.cols, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Reduced row-echelon form together with the pivot column of each
    /// nonzero row.
    pub fn rref_with_pivots(&self) -> (Self, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..m.cols {
            if lead == m.rows {
                break;
            }
            let Some(pr) = (lead..m.rows).find(|&r| !f.is_zero(m.get(r, col))) else {
                continue;
            };
            m.swap_rows(lead, pr);
            let inv = f.inv(m.get(lead, col));
            for c in col..m.cols {
                let idx = lead * m.cols + c;
                m.data[idx] = f.mul(&m.data[idx], &inv);
            }
            for r in 0..m.rows {
                if r == lead || f.is_zero(m.get(r, col)) {
                    continue;
                }
                let factor = m.get(r, col).clone();
                for c in col..m.cols {
                    let sub = f.mul(&factor, m.get(lead, c));
                    let idx = r * m.cols + c;
                    m.data[idx] = f.sub(&m.data[idx], &sub);
                }
            }
            pivots.push(col);
            lead += 1;
        }
        (m, pivots)
    }

    /// The unique reduced row-echelon form; zero rows trail.
    pub fn rref(&self) -> Self {
        self.rref_with_pivots().0
    }

    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// Row-major lexicographic comparison of entries, then by shape.
    pub fn cmp_entries(&self, other: &Self) -> Ordering {
        (self.rows, self.cols)
            .cmp(&(other.rows, other.cols))
            .then_with(|| self.data.cmp(&other.data))
    }
}

/// True iff every row of `small` lies in the row space of `big`.
pub fn rowspace_contains<F: Field>(big: &Matrix<F>, small: &Matrix<F>) -> Result<bool> {
    if big.field != small.field {
        return Err(Error::DimensionMismatch("matrices over different fields".into()));
    }
    let stacked = big.vstack(small)?;
    Ok(big.rank() == stacked.rank())
}
