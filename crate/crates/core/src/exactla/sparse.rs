use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::Rational;
use crate::error::{Error, Result};

/// Sparse vector as `(column, value)` pairs, strictly increasing in column,
/// with no stored zeros.
pub type SparseVec<E = Rational> = Vec<(usize, E)>;

/// Builds a normalised sparse vector from arbitrary `(column, value)` terms,
/// summing duplicates and dropping zeros.
pub fn sparse_from_terms(terms: impl IntoIterator<Item = (usize, Rational)>) -> SparseVec {
    let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
    for (c, v) in terms {
        let e = acc.entry(c).or_default();
        *e = &*e + &v;
    }
    acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
}

pub fn sparse_scale(v: &SparseVec, s: &Rational) -> SparseVec {
    if s.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(c, x)| (*c, x * s)).collect()
}

/// `a + s * b`
pub fn sparse_axpy(a: &SparseVec, s: &Rational, b: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j >= b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i >= a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i].clone());
            i += 1;
        } else if take_b {
            let v = s * &b[j].1;
            if !v.is_zero() {
                out.push((b[j].0, v));
            }
            j += 1;
        } else {
            let v = &a[i].1 + &(s * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Sparse matrix in coordinate form with row-major iteration order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SparseMatrix<E = Rational> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), E>,
}

impl<E: Clone + PartialEq + Default> SparseMatrix<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    /// Sets an entry; storing the zero value removes it.
    pub fn set(&mut self, r: usize, c: usize, v: E) -> Result<()> {
        if r >= self.rows {
            return Err(Error::DimensionMismatch { expected: self.rows, found: r + 1 });
        }
        if c >= self.cols {
            return Err(Error::DimensionMismatch { expected: self.cols, found: c + 1 });
        }
        if v == E::default() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
        Ok(())
    }

    pub fn get(&self, r: usize, c: usize) -> E {
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &E)> {
        self.entries.iter().map(|((r, c), v)| (*r, *c, v))
    }

    /// Rows as sparse vectors (empty rows included).
    pub fn row_vectors(&self) -> Vec<SparseVec<E>> {
        let mut out: Vec<SparseVec<E>> = vec![Vec::new(); self.rows];
        for ((r, c), v) in &self.entries {
            out[*r].push((*c, v.clone()));
        }
        out
    }

    pub fn transpose(&self) -> Self {
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|((r, c), v)| ((*c, *r), v.clone())).collect(),
        }
    }
}

impl SparseMatrix<Rational> {
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), Rational::ONE);
        }
        m
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch { expected: self.rows * self.cols, found: other.rows * other.cols });
        }
        let mut out = self.clone();
        for ((r, c), v) in &other.entries {
            let s = &out.get(*r, *c) + v;
            out.set(*r, *c, s)?;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch { expected: self.cols, found: other.rows });
        }
        let rows_b = other.row_vectors();
        let mut acc: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for ((r, k), a) in &self.entries {
            for (c, b) in &rows_b[*k] {
                let e = acc.entry((*r, *c)).or_default();
                *e = &*e + &(a * b);
            }
        }
        acc.retain(|_, v| !v.is_zero());
        Ok(SparseMatrix { rows: self.rows, cols: other.cols, entries: acc })
    }

    /// Matrix whose rows are the given vectors.
    pub fn from_rows(cols: usize, rows: &[SparseVec]) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, v) in rows.iter().enumerate() {
            for (c, x) in v {
                m.set(r, *c, x.clone())?;
            }
        }
        Ok(m)
    }

    /// Image of a column vector.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut cols: BTreeMap<usize, &Rational> = BTreeMap::new();
        for (c, x) in v {
            cols.insert(*c, x);
        }
        sparse_from_terms(
            self.entries
                .iter()
                .filter_map(|((r, c), a)| cols.get(c).map(|x| (*r, a * *x))),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn axpy_cancels() {
        let a = vec![(0, q(1)), (2, q(3))];
        let b = vec![(2, q(1)), (5, q(1))];
        assert_eq!(sparse_axpy(&a, &q(-3), &b), vec![(0, q(1)), (5, q(-3))]);
    }

    #[test]
    fn no_stored_zeros() {
        let mut m = SparseMatrix::identity(3);
        m.set(1, 1, Rational::ZERO).unwrap();
        assert_eq!(m.nnz(), 2);
        assert!(m.set(3, 0, q(1)).is_err());
    }

    #[test]
    fn product_with_identity() {
        let mut m = SparseMatrix::zeros(2, 3);
        m.set(0, 2, q(4)).unwrap();
        m.set(1, 0, q(-1)).unwrap();
        assert_eq!(m.mul(&SparseMatrix::identity(3)).unwrap(), m);
        assert_eq!(m.transpose().transpose(), m);
    }
}
