use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Sparse integer row: strictly increasing column indices, no zero entries.
type IntRow = Vec<(usize, BigInt)>;

/// An incrementally built row-echelon form over the integers.
///
/// Rows are stored primitive (gcd 1, positive leading entry) and keyed by the
/// column of their leading entry. Inserting a vector reduces it against the
/// stored pivots; if something survives, it becomes a new pivot. This is the
/// workhorse behind rank, span membership and subspace sums.
#[derive(Debug, Clone)]
pub struct Echelon {
    ncols: usize,
    pivots: BTreeMap<usize, IntRow>,
}

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon { ncols, pivots: BTreeMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Pivot columns in increasing order.
    pub fn pivot_columns(&self) -> Vec<usize> {
        self.pivots.keys().copied().collect()
    }

    /// Inserts a sparse rational vector; returns `true` if it was independent
    /// of everything inserted so far.
    pub fn insert(&mut self, entries: &[(usize, BigRational)]) -> bool {
        let row = integerize(entries);
        self.insert_int(row)
    }

    /// Inserts a dense rational vector.
    pub fn insert_dense(&mut self, v: &[BigRational]) -> bool {
        let sparse: Vec<(usize, BigRational)> =
            v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect();
        self.insert(&sparse)
    }

    /// Returns `true` if the vector lies in the span of the inserted vectors.
    pub fn contains(&self, entries: &[(usize, BigRational)]) -> bool {
        self.reduce(integerize(entries)).is_empty()
    }

    fn insert_int(&mut self, row: IntRow) -> bool {
        debug_assert!(row.iter().all(|(c, _)| *c < self.ncols));
        let reduced = self.reduce(row);
        match reduced.first() {
            None => false,
            Some(&(lead, _)) => {
                self.pivots.insert(lead, reduced);
                true
            }
        }
    }

    fn reduce(&self, mut row: IntRow) -> IntRow {
        loop {
            let lead = match row.first() {
                None => return row,
                Some((c, _)) => *c,
            };
            let pivot = match self.pivots.get(&lead) {
                None => return row,
                Some(p) => p,
            };
            let a = pivot[0].1.clone();
            let b = row[0].1.clone();
            let g = a.gcd(&b);
            // row <- (a/g) * row - (b/g) * pivot kills the leading entry.
            row = combine(&row, &(&a / &g), pivot, &(&b / &g));
            make_primitive(&mut row);
        }
    }
}

/// Computes `x * u - y * v` for sparse rows.
fn combine(u: &IntRow, x: &BigInt, v: &IntRow, y: &BigInt) -> IntRow {
    let mut out = Vec::with_capacity(u.len() + v.len());
    let (mut i, mut j) = (0, 0);
    while i < u.len() || j < v.len() {
        let cu = u.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cv = v.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        let (col, val) = if cu < cv {
            i += 1;
            (cu, x * &u[i - 1].1)
        } else if cv < cu {
            j += 1;
            (cv, -(y * &v[j - 1].1))
        } else {
            i += 1;
            j += 1;
            (cu, x * &u[i - 1].1 - y * &v[j - 1].1)
        };
        if !val.is_zero() {
            out.push((col, val));
        }
    }
    out
}

fn make_primitive(row: &mut IntRow) {
    if row.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for (_, x) in row.iter() {
        g = g.gcd(x);
        if g.is_one() {
            break;
        }
    }
    if row[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for (_, x) in row.iter_mut() {
            *x = &*x / &g;
        }
    }
}

/// Clears denominators and returns a primitive integer row.
fn integerize(entries: &[(usize, BigRational)]) -> IntRow {
    let mut sorted: Vec<&(usize, BigRational)> = entries.iter().filter(|e| !e.1.is_zero()).collect();
    sorted.sort_by_key(|e| e.0);
    let mut l = BigInt::one();
    for (_, x) in &sorted {
        l = l.lcm(x.denom());
    }
    let mut row: IntRow = Vec::with_capacity(sorted.len());
    for (c, x) in sorted {
        let v = x.numer() * (&l / x.denom());
        match row.last_mut() {
            Some(last) if last.0 == *c => last.1 += v,
            _ => row.push((*c, v)),
        }
    }
    row.retain(|e| !e.1.is_zero());
    make_primitive(&mut row);
    row
}
