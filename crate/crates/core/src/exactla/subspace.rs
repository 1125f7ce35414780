use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::echelon::{reduce_full, work_from, Echelon, PivotLookup};
use super::field::{Field, PrimeField, Rationals};
use super::sparse::{SparseMatrix, SparseVec};
use super::Rational;
use crate::error::{Error, Result};

/// How `V*⊗V*` pairs with `V⊗V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PairingConvention {
    /// `<x*⊗y*, a⊗b> = <x*,a><y*,b>`
    #[default]
    Straight,
    /// `<x*⊗y*, a⊗b> = <x*,b><y*,a>`
    Reversed,
}

impl PairingConvention {
    pub const ALL: [PairingConvention; 2] = [PairingConvention::Straight, PairingConvention::Reversed];

    /// Column of `V⊗V` paired with column `c` of `V*⊗V*`; an involution.
    pub fn partner(self, c: usize, n: usize) -> usize {
        match self {
            PairingConvention::Straight => c,
            PairingConvention::Reversed => (c % n) * n + c / n,
        }
    }
}

impl std::fmt::Display for PairingConvention {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PairingConvention::Straight => "straight",
            PairingConvention::Reversed => "reversed",
        })
    }
}

impl std::str::FromStr for PairingConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "straight" => Ok(PairingConvention::Straight),
            "reversed" => Ok(PairingConvention::Reversed),
            other => Err(Error::Parse(format!("unknown pairing {other:?}"))),
        }
    }
}

/// A subspace of `Q^ambient` held as its reduced row-echelon basis, pivots
/// chosen left to right. The basis is canonical, so equality of subspaces is
/// equality of values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<SparseVec>,
}

struct RrefLookup<'a> {
    pivots: HashMap<usize, &'a SparseVec>,
}

impl PivotLookup<Rational> for RrefLookup<'_> {
    fn visit_row(&self, pivot: usize, f: &mut dyn FnMut(usize, &Rational)) -> bool {
        match self.pivots.get(&pivot) {
            Some(row) => {
                for (c, e) in row.iter() {
                    f(*c, e);
                }
                true
            }
            None => false,
        }
    }
}

fn check_vec(ambient: usize, v: &SparseVec) -> Result<()> {
    match v.last() {
        Some((c, _)) if *c >= ambient => Err(Error::DimensionMismatch { expected: ambient, found: c + 1 }),
        _ => Ok(()),
    }
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace { ambient, basis: (0..ambient).map(|i| vec![(i, Rational::ONE)]).collect() }
    }

    /// Span of the given vectors.
    pub fn span<'a>(ambient: usize, vectors: impl IntoIterator<Item = &'a SparseVec>) -> Result<Self> {
        let mut e = Echelon::new(Rationals, ambient);
        for v in vectors {
            check_vec(ambient, v)?;
            e.insert(v);
        }
        Ok(Subspace { ambient, basis: e.into_rref() })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn pivots(&self) -> Vec<usize> {
        self.basis.iter().map(|r| r[0].0).collect()
    }

    fn lookup(&self) -> RrefLookup<'_> {
        RrefLookup { pivots: self.basis.iter().map(|r| (r[0].0, r)).collect() }
    }

    /// What is left of `v` after eliminating against the basis.
    pub fn residual(&self, v: &SparseVec) -> Result<SparseVec> {
        check_vec(self.ambient, v)?;
        let mut work = work_from::<Rationals>(v);
        reduce_full(&Rationals, &self.lookup(), &mut work, 0);
        Ok(work.into_iter().collect())
    }

    pub fn contains(&self, v: &SparseVec) -> Result<bool> {
        Ok(self.residual(v)?.is_empty())
    }

    fn same_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.same_ambient(other)?;
        for v in &self.basis {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        Subspace::span(self.ambient, self.basis.iter().chain(other.basis.iter()))
    }

    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.same_ambient(other)?;
        let p = PairingConvention::Straight;
        self.annihilator(p)?.sum(&other.annihilator(p)?)?.annihilator(p)
    }

    /// Functionals vanishing on `self`. For [`PairingConvention::Reversed`]
    /// the ambient dimension must be a perfect square `n²`, read as `V⊗V`.
    pub fn annihilator(&self, pairing: PairingConvention) -> Result<Subspace> {
        let n = match pairing {
            PairingConvention::Straight => 0,
            PairingConvention::Reversed => {
                let n = (self.ambient as f64).sqrt().round() as usize;
                if n * n != self.ambient {
                    return Err(Error::DimensionMismatch { expected: n * n, found: self.ambient });
                }
                n
            }
        };
        let rows: Vec<SparseVec> = self
            .basis
            .iter()
            .map(|v| {
                let mut r: SparseVec = v.iter().map(|(c, x)| (pairing.partner(*c, n), x.clone())).collect();
                r.sort_by_key(|(c, _)| *c);
                r
            })
            .collect();
        Ok(kernel_of_rows(self.ambient, &rows))
    }

    /// Image under a coordinate map `c ↦ sign·e_{map(c)}` into a new ambient.
    pub fn map_coordinates(&self, ambient: usize, map: impl Fn(usize) -> (i64, usize)) -> Result<Subspace> {
        let vs: Vec<SparseVec> = self
            .basis
            .iter()
            .map(|v| {
                super::sparse_from_terms(v.iter().map(|(c, x)| {
                    let (s, t) = map(*c);
                    (t, x * &Rational::from_integer(s))
                }))
            })
            .collect();
        Subspace::span(ambient, vs.iter())
    }
}

fn kernel_of_rows(ncols: usize, rows: &[SparseVec]) -> Subspace {
    let mut e = Echelon::new(Rationals, ncols);
    for r in rows {
        e.insert(r);
    }
    let rref = e.into_rref();
    let pivot_set: std::collections::HashSet<usize> = rref.iter().map(|r| r[0].0).collect();
    // column f of the rref, as (pivot, coefficient) pairs
    let mut by_col: HashMap<usize, Vec<(usize, Rational)>> = HashMap::new();
    for r in &rref {
        for (c, x) in &r[1..] {
            by_col.entry(*c).or_default().push((r[0].0, x.clone()));
        }
    }
    let vs: Vec<SparseVec> = (0..ncols)
        .filter(|c| !pivot_set.contains(c))
        .map(|f| {
            let mut v: SparseVec = vec![(f, Rational::ONE)];
            if let Some(col) = by_col.get(&f) {
                v.extend(col.iter().map(|(p, x)| (*p, -x)));
            }
            v.sort_by_key(|(c, _)| *c);
            v
        })
        .collect();
    Subspace::span(ncols, vs.iter()).expect("indices in range")
}

/// Rank over the rationals.
pub fn rank(m: &SparseMatrix) -> usize {
    super::echelon::rank_of(Rationals, m.ncols(), &m.row_vectors())
}

/// Null space `{v : m v = 0}`.
pub fn kernel(m: &SparseMatrix) -> Subspace {
    kernel_of_rows(m.ncols(), &m.row_vectors())
}

pub fn intersect(a: &Subspace, b: &Subspace) -> Result<Subspace> {
    a.intersect(b)
}

pub fn annihilator(a: &Subspace, pairing: PairingConvention) -> Result<Subspace> {
    a.annihilator(pairing)
}

pub fn contains(a: &Subspace, v: &SparseVec) -> Result<bool> {
    a.contains(v)
}

/// Rank modulo `p`. Panics if an entry's denominator vanishes mod `p`.
pub fn rank_modular(m: &SparseMatrix, field: PrimeField) -> usize {
    let rows: Vec<SparseVec<u64>> = m
        .row_vectors()
        .iter()
        .map(|r| {
            r.iter()
                .filter_map(|(c, x)| {
                    let v = field.from_rational(x);
                    (v != 0).then_some((*c, v))
                })
                .collect()
        })
        .collect();
    super::echelon::rank_of(field, m.ncols(), &rows)
}

/// Outcome of a modular rank computation checked against the rational one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankCheck {
    pub modular: usize,
    pub rational: usize,
}

impl RankCheck {
    pub fn agreed(&self) -> bool {
        self.modular == self.rational
    }
}

/// Modular rank, recomputed over the rationals. The rational value is the
/// one to use; the modular one is kept to record whether `p` was lucky.
pub fn rank_cross_checked(m: &SparseMatrix, field: PrimeField) -> RankCheck {
    RankCheck { modular: rank_modular(m, field), rational: rank(m) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::oracle::dense_rank;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn e(i: usize) -> SparseVec {
        vec![(i, q(1))]
    }

    #[test]
    fn trivial_ranks_and_kernels() {
        assert_eq!(rank(&SparseMatrix::identity(3)), 3);
        assert_eq!(rank(&SparseMatrix::zeros(4, 7)), 0);
        assert_eq!(kernel(&SparseMatrix::identity(3)), Subspace::zero(3));
        assert_eq!(kernel(&SparseMatrix::zeros(2, 5)), Subspace::full(5));
    }

    #[test]
    fn intersections() {
        let a = Subspace::span(2, [e(0)].iter()).unwrap();
        let b = Subspace::span(2, [e(1)].iter()).unwrap();
        assert_eq!(a.intersect(&b).unwrap(), Subspace::zero(2));
        assert_eq!(a.intersect(&a).unwrap(), a);
        assert!(a.intersect(&Subspace::zero(3)).is_err());
    }

    #[test]
    fn membership() {
        let a = Subspace::span(3, [e(0)].iter()).unwrap();
        assert!(a.contains(&vec![]).unwrap());
        assert!(!a.contains(&e(1)).unwrap());
        assert!(a.contains(&e(5)).is_err());
    }

    #[test]
    fn annihilator_of_commutator() {
        // e1⊗e2 - e2⊗e1 in a 2-generator tensor square
        let r = Subspace::span(4, [vec![(1, q(1)), (2, q(-1))]].iter()).unwrap();
        let ann = r.annihilator(PairingConvention::Straight).unwrap();
        let expected =
            Subspace::span(4, [vec![(0, q(1))], vec![(3, q(1))], vec![(1, q(1)), (2, q(1))]].iter()).unwrap();
        assert_eq!(ann, expected);
        assert_eq!(Subspace::zero(4).annihilator(PairingConvention::Straight).unwrap(), Subspace::full(4));
        assert_eq!(Subspace::full(4).annihilator(PairingConvention::Reversed).unwrap(), Subspace::zero(4));
        assert!(Subspace::full(3).annihilator(PairingConvention::Reversed).is_err());
    }

    #[test]
    fn reversed_pairing_differs_on_asymmetric_input() {
        let r = Subspace::span(4, [vec![(1, q(1)), (2, q(2))]].iter()).unwrap();
        let s = r.annihilator(PairingConvention::Straight).unwrap();
        let t = r.annihilator(PairingConvention::Reversed).unwrap();
        assert_ne!(s, t);
        assert_eq!(s.dim(), t.dim());
    }

    #[test]
    fn cross_checked_rank_flags_unlucky_prime() {
        let m = SparseMatrix::from_rows(2, &[vec![(0, q(1)), (1, q(2))], vec![(0, q(3)), (1, q(-1))]]).unwrap();
        let c = rank_cross_checked(&m, PrimeField::new(7).unwrap());
        assert_eq!((c.modular, c.rational, c.agreed()), (1, 2, false));
        assert!(rank_cross_checked(&m, PrimeField::default()).agreed());
    }

    fn arb_matrix() -> impl Strategy<Value = (usize, usize, Vec<(usize, usize, Rational)>)> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            let entry = (0..r, 0..c, -3i64..4, 1i64..3).prop_map(|(i, j, n, d)| (i, j, Rational::new(n, d)));
            (Just(r), Just(c), prop::collection::vec(entry, 0..(r * c)))
        })
    }

    fn build(r: usize, c: usize, es: &[(usize, usize, Rational)]) -> SparseMatrix {
        let mut m = SparseMatrix::zeros(r, c);
        for (i, j, v) in es {
            m.set(*i, *j, v.clone()).unwrap();
        }
        m
    }

    proptest! {
        #[test]
        fn rank_nullity((r, c, es) in arb_matrix()) {
            let m = build(r, c, &es);
            let k = kernel(&m);
            prop_assert_eq!(rank(&m) + k.dim(), c);
            for v in k.basis() {
                prop_assert!(m.apply(v).is_empty());
            }
        }

        #[test]
        fn rank_matches_dense_oracle((r, c, es) in arb_matrix()) {
            let m = build(r, c, &es);
            let dense: Vec<_> = m.iter().map(|(i, j, v)| (i, j, v.clone())).collect();
            prop_assert_eq!(rank(&m), dense_rank(r, c, &dense));
        }

        #[test]
        fn modular_rank_never_exceeds_rational((r, c, es) in arb_matrix()) {
            let m = build(r, c, &es);
            let check = rank_cross_checked(&m, PrimeField::new(5).unwrap());
            prop_assert!(check.modular <= check.rational);
        }

        #[test]
        fn double_annihilator((r, c, es) in arb_matrix(), rev in any::<bool>()) {
            let m = build(r, c * c, &es.iter().map(|(i, j, v)| (*i, j * c + (j % c), v.clone())).collect::<Vec<_>>());
            let s = Subspace::span(c * c, m.row_vectors().iter()).unwrap();
            let p = if rev { PairingConvention::Reversed } else { PairingConvention::Straight };
            let a = s.annihilator(p).unwrap();
            prop_assert_eq!(a.dim() + s.dim(), c * c);
            prop_assert_eq!(a.annihilator(p).unwrap(), s);
        }

        #[test]
        fn canonical_basis_is_order_free((r, c, es) in arb_matrix()) {
            let rows = build(r, c, &es).row_vectors();
            let fwd = Subspace::span(c, rows.iter()).unwrap();
            let back = Subspace::span(c, rows.iter().rev()).unwrap();
            prop_assert_eq!(fwd, back);
        }

        #[test]
        fn intersection_is_contained((r, c, es) in arb_matrix(), split in 0usize..7) {
            let rows = build(r, c, &es).row_vectors();
            let k = split.min(rows.len());
            let a = Subspace::span(c, rows[..k].iter()).unwrap();
            let b = Subspace::span(c, rows[k..].iter()).unwrap();
            let i = a.intersect(&b).unwrap();
            prop_assert!(i.is_subspace_of(&a).unwrap() && i.is_subspace_of(&b).unwrap());
            prop_assert_eq!(i.dim() + a.sum(&b).unwrap().dim(), a.dim() + b.dim());
        }
    }
}
