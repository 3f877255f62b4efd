use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Echelon, LinAlgError};

/// A sparse matrix of rationals. Zero entries are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigRational::one());
        }
        m
    }

    /// Builds a matrix from dense rows. All rows must have equal length.
    pub fn from_rows(rows: &[Vec<BigRational>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    /// Builds a matrix whose `j`-th column is the sparse vector `columns[j]`.
    pub fn from_sparse_columns(rows: usize, columns: &[Vec<(usize, BigRational)>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, x) in col {
                m.add_to(*i, j, x);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    /// Number of stored (nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, r: usize, c: usize) -> BigRational {
        self.entries.get(&(r, c)).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigRational) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &BigRational) {
        let cur = self.get(r, c);
        self.set(r, c, cur + v);
    }

    /// Nonzero entries in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &BigRational)> {
        self.entries.iter().map(|((r, c), v)| (*r, *c, v))
    }

    /// Columns as sparse vectors (row index, value), rows increasing.
    pub fn columns(&self) -> Vec<Vec<(usize, BigRational)>> {
        let mut cols = vec![Vec::new(); self.cols];
        for ((r, c), v) in &self.entries {
            cols[*c].push((*r, v.clone()));
        }
        cols
    }

    /// Rows as sparse vectors (column index, value), columns increasing.
    pub fn sparse_rows(&self) -> Vec<Vec<(usize, BigRational)>> {
        let mut rows = vec![Vec::new(); self.rows];
        for ((r, c), v) in &self.entries {
            rows[*r].push((*c, v.clone()));
        }
        rows
    }

    pub fn to_dense(&self) -> Vec<Vec<BigRational>> {
        let mut d = vec![vec![BigRational::zero(); self.cols]; self.rows];
        for ((r, c), v) in &self.entries {
            d[*r][*c] = v.clone();
        }
        d
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for ((r, c), v) in &self.entries {
            t.entries.insert((*c, *r), v.clone());
        }
        t
    }

    pub fn scaled(&self, s: &BigRational) -> Self {
        let mut m = Self::zeros(self.rows, self.cols);
        if !s.is_zero() {
            for (k, v) in &self.entries {
                m.entries.insert(*k, v * s);
            }
        }
        m
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, LinAlgError> {
        self.same_shape(other)?;
        let mut m = self.clone();
        for ((r, c), v) in &other.entries {
            m.add_to(*r, *c, v);
        }
        Ok(m)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, LinAlgError> {
        self.checked_add(&other.scaled(&-BigRational::one()))
    }

    /// Matrix product `self * other`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch {
                what: "inner dimensions of product",
                left: self.cols,
                right: other.rows,
            });
        }
        let other_rows = other.sparse_rows();
        let mut acc: BTreeMap<(usize, usize), BigRational> = BTreeMap::new();
        for ((r, k), a) in &self.entries {
            for (c, b) in &other_rows[*k] {
                let e = acc.entry((*r, *c)).or_insert_with(BigRational::zero);
                *e += a * b;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(RationalMatrix { rows: self.rows, cols: other.cols, entries: acc })
    }

    /// Applies the matrix to a dense vector.
    pub fn apply(&self, v: &[BigRational]) -> Result<Vec<BigRational>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch { what: "vector length", left: self.cols, right: v.len() });
        }
        let mut out = vec![BigRational::zero(); self.rows];
        for ((r, c), a) in &self.entries {
            out[*r] += a * &v[*c];
        }
        Ok(out)
    }

    /// Places `block` with its top-left corner at `(r0, c0)`, adding to any
    /// existing entries.
    pub fn add_block(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for ((r, c), v) in &block.entries {
            self.add_to(r0 + r, c0 + c, v);
        }
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self, LinAlgError> {
        if self.rows != other.rows {
            return Err(LinAlgError::DimensionMismatch {
                what: "row counts for hstack",
                left: self.rows,
                right: other.rows,
            });
        }
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        m.add_block(0, 0, self);
        m.add_block(0, self.cols, other);
        Ok(m)
    }

    /// Exact rank, computed on whichever side is smaller.
    pub fn rank(&self) -> usize {
        if self.cols <= self.rows {
            let mut ech = Echelon::new(self.rows);
            for col in self.columns() {
                ech.insert(&col);
            }
            ech.rank()
        } else {
            let mut ech = Echelon::new(self.cols);
            for row in self.sparse_rows() {
                ech.insert(&row);
            }
            ech.rank()
        }
    }

    /// A basis of the right kernel `{x : self * x = 0}` read off from the
    /// reduced row-echelon form; one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vec<BigRational>> {
        let (rref, pivots) = rref(self.to_dense(), self.cols);
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = Some(i);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut x = vec![BigRational::zero(); self.cols];
            x[free] = BigRational::one();
            for (i, &p) in pivots.iter().enumerate() {
                x[p] = -rref[i][free].clone();
            }
            basis.push(x);
        }
        basis
    }

    /// Whether the two matrices have the same column space.
    pub fn colspace_equal(&self, other: &Self) -> Result<bool, LinAlgError> {
        let joint = self.subspace_sum_rank(other)?;
        Ok(joint == self.rank() && joint == other.rank())
    }

    /// Dimension of the sum of the two column spaces.
    pub fn subspace_sum_rank(&self, other: &Self) -> Result<usize, LinAlgError> {
        if self.rows != other.rows {
            return Err(LinAlgError::DimensionMismatch {
                what: "ambient dimensions of column spaces",
                left: self.rows,
                right: other.rows,
            });
        }
        let mut ech = Echelon::new(self.rows);
        for col in self.columns().into_iter().chain(other.columns()) {
            ech.insert(&col);
        }
        Ok(ech.rank())
    }

    fn same_shape(&self, other: &Self) -> Result<(), LinAlgError> {
        if self.rows != other.rows {
            return Err(LinAlgError::DimensionMismatch { what: "row counts", left: self.rows, right: other.rows });
        }
        if self.cols != other.cols {
            return Err(LinAlgError::DimensionMismatch { what: "column counts", left: self.cols, right: other.cols });
        }
        Ok(())
    }
}

/// Reduced row-echelon form of a dense matrix; returns the reduced rows
/// (only the nonzero ones) and their pivot columns.
fn rref(mut a: Vec<Vec<BigRational>>, cols: usize) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    (a, pivots)
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for row in self.to_dense() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "  {}", cells.join(" "))?;
        }
        write!(f, "]")
    }
}
