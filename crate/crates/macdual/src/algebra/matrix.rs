//! Dense rational matrices, reduced row echelon forms, and kernels.

use std::fmt;

use super::rat::Rat;

/// A dense matrix over the rationals, stored row major.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rat>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Rat::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rat::one());
        }
        m
    }

    /// Builds a matrix from rows, which must all have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rat>>) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        let count = rows.len();
        for row in rows {
            assert_eq!(row.len(), cols, "ragged row");
            data.extend(row);
        }
        Matrix { rows: count, cols, data }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, row: usize, col: usize) -> &Rat {
        &self.data[row * self.cols + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: Rat) {
        self.data[row * self.cols + col] = value;
    }

    pub fn row(&self, row: usize) -> &[Rat] {
        &self.data[row * self.cols..(row + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rat>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions differ");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = Rat::zero();
            for t in 0..self.cols {
                let a = self.at(i, t);
                if !a.is_zero() {
                    acc += &(a * rhs.at(t, j));
                }
            }
            acc
        })
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(self.cols, v.len(), "vector length differs from column count");
        (0..self.rows)
            .map(|i| {
                let mut acc = Rat::zero();
                for t in 0..self.cols {
                    let a = self.at(i, t);
                    if !a.is_zero() {
                        acc += &(a * &v[t]);
                    }
                }
                acc
            })
            .collect()
    }

    /// Stacks `bottom` below `self`; both must have the same column count.
    pub fn stack(&self, bottom: &Matrix) -> Matrix {
        assert_eq!(self.cols, bottom.cols, "column counts differ");
        let mut data = Vec::with_capacity(self.data.len() + bottom.data.len());
        data.extend_from_slice(&self.data);
        data.extend_from_slice(&bottom.data);
        Matrix { rows: self.rows + bottom.rows, cols: self.cols, data }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// The reduced row echelon form with zero rows dropped.  Pivots are 1,
    /// pivot columns are otherwise zero, and pivot columns increase row by
    /// row, so the result is a canonical representative of the row space.
    pub fn rref(mut self) -> Matrix {
        let mut pivot_row = 0;
        for col in 0..self.cols {
            let Some(found) =
                (pivot_row..self.rows).find(|&r| !self.at(r, col).is_zero())
            else {
                continue;
            };
            self.swap_rows(pivot_row, found);
            let p_base = pivot_row * self.cols;
            let lead = self.data[p_base + col].clone();
            if !lead.is_one() {
                let inv = lead.inv();
                for c in col..self.cols {
                    let t = &self.data[p_base + c] * &inv;
                    self.data[p_base + c] = t;
                }
            }
            for r in 0..self.rows {
                if r == pivot_row {
                    continue;
                }
                let r_base = r * self.cols;
                if self.data[r_base + col].is_zero() {
                    continue;
                }
                let factor = self.data[r_base + col].clone();
                for c in col..self.cols {
                    if self.data[p_base + c].is_zero() {
                        continue;
                    }
                    let t = &self.data[r_base + c] - &(&self.data[p_base + c] * &factor);
                    self.data[r_base + c] = t;
                }
            }
            pivot_row += 1;
            if pivot_row == self.rows {
                break;
            }
        }
        self.data.truncate(pivot_row * self.cols);
        self.rows = pivot_row;
        self
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().rows
    }

    /// A canonical basis of `{x : self * x = 0}`, one row per basis vector.
    pub fn kernel(&self) -> Matrix {
        let r = self.clone().rref();
        let mut pivots = Vec::with_capacity(r.rows);
        for row in 0..r.rows {
            let col = (0..r.cols)
                .find(|&c| !r.at(row, c).is_zero())
                .expect("rref keeps no zero rows");
            pivots.push(col);
        }
        let mut is_pivot = vec![false; r.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..r.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![Rat::zero(); r.cols];
            v[free] = Rat::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.at(row, free);
            }
            basis.push(v);
        }
        Matrix::from_rows(self.cols, basis).rref()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} matrix", self.rows, self.cols)?;
        for r in 0..self.rows {
            let entries: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", entries.join(", "))?;
        }
        Ok(())
    }
}

/// Maintains a reduced row echelon form under row insertion.
///
/// Rows are stored fully reduced against each other, sorted by pivot
/// column, so [`RowReducer::into_matrix`] is already canonical and
/// [`RowReducer::rank`] is just the stored row count.
pub struct RowReducer {
    cols: usize,
    pivots: Vec<usize>,
    rows: Vec<Vec<Rat>>,
}

impl RowReducer {
    pub fn new(cols: usize) -> Self {
        RowReducer { cols, pivots: Vec::new(), rows: Vec::new() }
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against the stored rows, leaving entries at stored
    /// pivot columns zero.
    fn reduce(&self, v: &mut [Rat]) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v[p].is_zero() {
                continue;
            }
            let factor = v[p].clone();
            for c in p..self.cols {
                if row[c].is_zero() {
                    continue;
                }
                let t = &v[c] - &(&row[c] * &factor);
                v[c] = t;
            }
        }
    }

    /// True when `v` already lies in the row space.
    pub fn reduces_to_zero(&self, v: &[Rat]) -> bool {
        let mut v = v.to_vec();
        self.reduce(&mut v);
        v.iter().all(Rat::is_zero)
    }

    /// Inserts a row, returning whether it enlarged the row space.
    pub fn insert(&mut self, mut v: Vec<Rat>) -> bool {
        assert_eq!(v.len(), self.cols, "row length differs from column count");
        self.reduce(&mut v);
        let Some(lead) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[lead].inv();
        if !inv.is_one() {
            for c in lead..self.cols {
                let t = &v[c] * &inv;
                v[c] = t;
            }
        }
        for (row, &p) in self.rows.iter_mut().zip(&self.pivots) {
            if row[lead].is_zero() {
                continue;
            }
            debug_assert!(p < lead, "echelon rows start at their pivot");
            let factor = row[lead].clone();
            for c in lead..self.cols {
                if v[c].is_zero() {
                    continue;
                }
                let t = &row[c] - &(&v[c] * &factor);
                row[c] = t;
            }
        }
        let pos = self.pivots.partition_point(|&p| p < lead);
        self.pivots.insert(pos, lead);
        self.rows.insert(pos, v);
        true
    }

    /// The stored rows as a canonical reduced row echelon matrix.
    pub fn into_matrix(self) -> Matrix {
        Matrix::from_rows(self.cols, self.rows)
    }
}
