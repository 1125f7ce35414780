use std::collections::{BTreeMap, HashMap};

use super::field::Field;
use super::sparse::SparseVec;

/// Source of pivot rows for elimination. A pivot row has its pivot as the
/// smallest column, with coefficient one there.
pub trait PivotLookup<E> {
    /// Feeds every entry of the row whose pivot is `pivot` to `f`; returns
    /// `false` (without calling `f`) when no row has that pivot.
    fn visit_row(&self, pivot: usize, f: &mut dyn FnMut(usize, &E)) -> bool;
}

/// Working vector used during elimination.
pub(crate) type Work<E> = BTreeMap<usize, E>;

pub(crate) fn work_from<F: Field>(v: &SparseVec<F::Elem>) -> Work<F::Elem> {
    v.iter().cloned().collect()
}

fn eliminate<F: Field, L: PivotLookup<F::Elem> + ?Sized>(
    field: &F,
    lookup: &L,
    work: &mut Work<F::Elem>,
    col: usize,
) -> bool {
    let x = match work.get(&col) {
        Some(x) => x.clone(),
        None => return false,
    };
    lookup.visit_row(col, &mut |c, e| {
        let slot = work.entry(c).or_insert_with(|| field.zero());
        *slot = field.sub_mul(slot, &x, e);
        if field.is_zero(slot) {
            work.remove(&c);
        }
    })
}

/// Eliminates until the smallest remaining column is not a pivot.
pub(crate) fn reduce_leading<F: Field, L: PivotLookup<F::Elem> + ?Sized>(
    field: &F,
    lookup: &L,
    work: &mut Work<F::Elem>,
) {
    while let Some(&c) = work.keys().next() {
        if !eliminate(field, lookup, work, c) {
            break;
        }
    }
}

/// Eliminates every pivot column at or after `from`.
pub(crate) fn reduce_full<F: Field, L: PivotLookup<F::Elem> + ?Sized>(
    field: &F,
    lookup: &L,
    work: &mut Work<F::Elem>,
    from: usize,
) {
    let mut next = from;
    while let Some((&c, _)) = work.range(next..).next() {
        eliminate(field, lookup, work, c);
        next = c + 1;
    }
}

/// Scales a nonempty working vector so its leading entry is one.
pub(crate) fn normalize<F: Field>(field: &F, work: Work<F::Elem>) -> SparseVec<F::Elem> {
    let lead = work.values().next().expect("nonempty").clone();
    let inv = field.inv(&lead);
    work.into_iter().map(|(c, v)| (c, field.mul(&v, &inv))).collect()
}

/// Incrementally built row-echelon basis: every stored row has a distinct
/// pivot (its smallest column) with coefficient one. Rows are not reduced
/// against each other until [`Echelon::into_rref`].
#[derive(Debug, Clone)]
pub struct Echelon<F: Field> {
    field: F,
    ncols: usize,
    rows: Vec<SparseVec<F::Elem>>,
    pivots: HashMap<usize, usize>,
}

impl<F: Field> PivotLookup<F::Elem> for Echelon<F> {
    fn visit_row(&self, pivot: usize, f: &mut dyn FnMut(usize, &F::Elem)) -> bool {
        match self.pivots.get(&pivot) {
            Some(&i) => {
                for (c, e) in &self.rows[i] {
                    f(*c, e);
                }
                true
            }
            None => false,
        }
    }
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F, ncols: usize) -> Self {
        Echelon { field, ncols, rows: Vec::new(), pivots: HashMap::new() }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivots.contains_key(&col)
    }

    pub fn rows(&self) -> &[SparseVec<F::Elem>] {
        &self.rows
    }

    /// Adds a vector to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &SparseVec<F::Elem>) -> bool {
        let mut work = work_from::<F>(v);
        reduce_leading(&self.field, self, &mut work);
        if work.is_empty() {
            return false;
        }
        let row = normalize(&self.field, work);
        self.pivots.insert(row[0].0, self.rows.len());
        self.rows.push(row);
        true
    }

    /// Residual of `v` after eliminating every pivot column.
    pub fn residual(&self, v: &SparseVec<F::Elem>) -> SparseVec<F::Elem> {
        let mut work = work_from::<F>(v);
        reduce_full(&self.field, self, &mut work, 0);
        work.into_iter().collect()
    }

    /// Canonical reduced row-echelon basis sorted by pivot.
    pub fn into_rref(self) -> Vec<SparseVec<F::Elem>> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.rows[i][0].0));
        let mut done = Echelon::new(self.field.clone(), self.ncols);
        for i in order {
            let row = &self.rows[i];
            let mut work = work_from::<F>(row);
            reduce_full(&self.field, &done, &mut work, row[0].0 + 1);
            let r: SparseVec<F::Elem> = work.into_iter().collect();
            done.pivots.insert(r[0].0, done.rows.len());
            done.rows.push(r);
        }
        done.rows.reverse();
        done.rows
    }
}

/// Rank of a list of vectors over `field`.
pub fn rank_of<F: Field>(field: F, ncols: usize, vectors: &[SparseVec<F::Elem>]) -> usize {
    let mut e = Echelon::new(field, ncols);
    for v in vectors {
        e.insert(v);
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{PrimeField, Rational, Rationals};

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn rref_is_reduced() {
        let mut e = Echelon::new(Rationals, 4);
        assert!(e.insert(&vec![(0, q(1)), (1, q(1)), (3, q(2))]));
        assert!(e.insert(&vec![(1, q(2)), (2, q(2))]));
        assert!(!e.insert(&vec![(0, q(1)), (1, q(3)), (2, q(2)), (3, q(2))]));
        let r = e.into_rref();
        assert_eq!(r, vec![vec![(0, q(1)), (2, q(-1)), (3, q(2))], vec![(1, q(1)), (2, q(1))]]);
    }

    #[test]
    fn modular_rank_can_drop() {
        // det = 7, singular mod 7 only
        let rows = vec![vec![(0, q(1)), (1, q(2))], vec![(0, q(3)), (1, q(-1))]];
        assert_eq!(rank_of(Rationals, 2, &rows), 2);
        let f = PrimeField::new(7).unwrap();
        let m: Vec<SparseVec<u64>> =
            rows.iter().map(|r| r.iter().map(|(c, v)| (*c, f.from_rational(v))).collect()).collect();
        assert_eq!(rank_of(f, 2, &m), 1);
    }
}
