//! Graded dimensions of `T(V)/(R)` by incremental elimination.
//!
//! The degree-m part of the ideal is `I_{m-1}⊗V + V^{⊗(m-2)}⊗R`. An echelon
//! basis of `I_{m-1}` tensored with a basis vector `e_x` is again in echelon
//! form (pivot `p·N + x`), so those rows are never stored: each degree keeps
//! only the rows contributed by `V^{⊗(m-2)}⊗R` that were new, and looks the
//! rest up one degree down.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactla::{
    normalize, reduce_leading, work_from, Field, FieldTag, PivotLookup, PrimeField, Rational, Rationals, SparseVec,
    Subspace, Work,
};

/// Below this many words a degree is always computed.
pub const SMALL_DEGREE_WORDS: u128 = 1 << 16;

/// Whether degree `m` of an `n`-generator algebra may be computed with
/// `field`. Degrees up to 4 are exact; degree 5 needs the modular backend;
/// anything above is refused unless tiny.
pub fn degree_allowed(n: usize, m: usize, field: FieldTag) -> Result<()> {
    let words = (n as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
    if words <= SMALL_DEGREE_WORDS || m <= 4 || (m == 5 && matches!(field, FieldTag::Modular(_))) {
        return Ok(());
    }
    let hint = if m == 5 { "; degree 5 requires --field prime" } else { "" };
    Err(Error::Budget(format!("degree {m} over {n} generators ({words} words) with {field} arithmetic{hint}")))
}

/// Explicit rows of each degree; degree `levels.len() + 1` is the newest.
struct Chain<E> {
    n: usize,
    levels: Vec<HashMap<usize, SparseVec<E>>>,
}

impl<E> Chain<E> {
    fn visit(&self, level: usize, q: usize, f: &mut dyn FnMut(usize, &E)) -> bool {
        if let Some(row) = self.levels[level].get(&q) {
            for (c, e) in row {
                f(*c, e);
            }
            return true;
        }
        if level == 0 {
            return false;
        }
        let n = self.n;
        let x = q % n;
        self.visit(level - 1, q / n, &mut |c, e| f(c * n + x, e))
    }
}

struct Top<'a, E>(&'a Chain<E>);

impl<E> PivotLookup<E> for Top<'_, E> {
    fn visit_row(&self, pivot: usize, f: &mut dyn FnMut(usize, &E)) -> bool {
        self.0.visit(self.0.levels.len() - 1, pivot, f)
    }
}

/// Only the rows inherited from the previous degree, for parallel pre-reduction.
struct Inherited<'a, E>(&'a Chain<E>);

impl<E> PivotLookup<E> for Inherited<'_, E> {
    fn visit_row(&self, pivot: usize, f: &mut dyn FnMut(usize, &E)) -> bool {
        let n = self.0.n;
        let top = self.0.levels.len() - 1;
        let x = pivot % n;
        self.0.visit(top - 1, pivot / n, &mut |c, e| f(c * n + x, e))
    }
}

/// Incremental computation of `dim A_m`, one degree at a time.
pub struct GradedEngine<F: Field> {
    field: F,
    n: usize,
    relations: Vec<SparseVec<F::Elem>>,
    chain: Chain<F::Elem>,
    ranks: Vec<u128>,
}

impl<F: Field> GradedEngine<F> {
    /// Starts at degree 2 from a basis of `R ⊆ V⊗V`.
    fn new(field: F, n: usize, relations: Vec<SparseVec<F::Elem>>) -> Self {
        let mut chain = Chain { n, levels: vec![HashMap::new()] };
        for r in &relations {
            let mut w = work_from::<F>(r);
            reduce_leading(&field, &Top(&chain), &mut w);
            if !w.is_empty() {
                let row = normalize(&field, w);
                chain.levels[0].insert(row[0].0, row);
            }
        }
        let rank = chain.levels[0].len() as u128;
        GradedEngine { field, n, relations, chain, ranks: vec![0, 0, rank] }
    }

    pub fn degree(&self) -> usize {
        self.ranks.len() - 1
    }

    /// `dim A_m` for the current top degree.
    pub fn dim(&self) -> u128 {
        let m = self.degree();
        (self.n as u128).pow(m as u32) - self.ranks[m]
    }

    /// Advances to the next degree.
    fn step(&mut self) {
        let n = self.n;
        let m = self.degree() + 1;
        let inherited = self.n as u128 * self.ranks[m - 1];
        self.chain.levels.push(HashMap::new());
        let prefixes = n.pow((m - 2) as u32);
        let shift = n * n;
        let candidates: Vec<(usize, usize)> =
            (0..prefixes).flat_map(|p| (0..self.relations.len()).map(move |r| (p, r))).collect();
        // Reduce against the inherited rows in parallel, then finish serially.
        let field = &self.field;
        let relations = &self.relations;
        let chain = &self.chain;
        let pre: Vec<Work<F::Elem>> = candidates
            .par_iter()
            .map(|&(p, r)| {
                let v: SparseVec<F::Elem> = relations[r].iter().map(|(c, e)| (p * shift + c, e.clone())).collect();
                let mut w = work_from::<F>(&v);
                reduce_leading(field, &Inherited(chain), &mut w);
                w
            })
            .collect();
        let mut new_rows = 0u128;
        for mut w in pre {
            if w.is_empty() {
                continue;
            }
            reduce_leading(&self.field, &Top(&self.chain), &mut w);
            if w.is_empty() {
                continue;
            }
            let row = normalize(&self.field, w);
            let top = self.chain.levels.len() - 1;
            self.chain.levels[top].insert(row[0].0, row);
            new_rows += 1;
        }
        self.ranks.push(inherited + new_rows);
    }

    /// Converts the echelon data to another field. Fails if a denominator
    /// vanishes in the target.
    fn convert<G: Field>(self, target: G, conv: impl Fn(&F::Elem) -> Option<G::Elem>) -> Option<GradedEngine<G>> {
        let cv = |v: &SparseVec<F::Elem>| -> Option<SparseVec<G::Elem>> {
            let mut out = Vec::with_capacity(v.len());
            for (c, e) in v {
                let x = conv(e)?;
                if !target.is_zero(&x) {
                    out.push((*c, x));
                }
            }
            Some(out)
        };
        let relations = self.relations.iter().map(&cv).collect::<Option<Vec<_>>>()?;
        let mut levels = Vec::new();
        for l in &self.chain.levels {
            let mut out = HashMap::new();
            for (p, row) in l {
                out.insert(*p, cv(row)?);
            }
            levels.push(out);
        }
        Some(GradedEngine { field: target, n: self.n, relations, chain: Chain { n: self.n, levels }, ranks: self.ranks })
    }
}

fn to_modular(f: PrimeField, q: &Rational) -> Option<u64> {
    let p = num_bigint::BigInt::from(f.modulus());
    if (q.denom_big() % p) == num_bigint::BigInt::from(0) {
        return None;
    }
    Some(f.from_rational(q))
}

/// Graded dimensions `dim A_0, …, dim A_maxdeg` with the arithmetic used for each.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HilbertData {
    pub dims: Vec<u128>,
    pub fields: Vec<FieldTag>,
}

impl HilbertData {
    /// True when every entry was computed over the rationals or is a zero
    /// (a modular zero is an exact zero).
    pub fn exact(&self) -> bool {
        self.dims.iter().zip(&self.fields).all(|(d, f)| *f == FieldTag::Rational || *d == 0)
    }

    pub fn total(&self) -> u128 {
        self.dims.iter().sum()
    }

    /// Dims with trailing zeros removed.
    pub fn trimmed(&self) -> Vec<u128> {
        let mut d = self.dims.clone();
        while d.len() > 1 && d.last() == Some(&0) {
            d.pop();
        }
        d
    }
}

/// Graded dimensions of `T(V)/(R)` through `maxdeg`, where `R` is given by a
/// basis in `V⊗V` with `n = dim V`. Degrees up to 4 use rational arithmetic;
/// degree 5 switches to `high_field` and must be modular. Once a degree
/// vanishes all later ones do, and no further work is done.
pub fn hilbert_series(n: usize, relations: &Subspace, maxdeg: usize, high_field: FieldTag) -> Result<HilbertData> {
    if relations.ambient() != n * n {
        return Err(Error::DimensionMismatch { expected: n * n, found: relations.ambient() });
    }
    let mut dims: Vec<u128> = vec![1, n as u128];
    let mut fields = vec![FieldTag::Rational; 2];
    dims.truncate(maxdeg + 1);
    fields.truncate(maxdeg + 1);
    if maxdeg < 2 {
        return Ok(HilbertData { dims, fields });
    }
    let backend = |m: usize| -> FieldTag {
        let words = (n as u128).checked_pow(m as u32).unwrap_or(u128::MAX);
        if m <= 4 || words <= SMALL_DEGREE_WORDS {
            FieldTag::Rational
        } else {
            high_field
        }
    };
    enum Engine {
        Q(GradedEngine<Rationals>),
        P(GradedEngine<PrimeField>),
    }
    let mut eng = Engine::Q(GradedEngine::new(Rationals, n, relations.basis().to_vec()));
    let dim = |e: &Engine| match e {
        Engine::Q(g) => g.dim(),
        Engine::P(g) => g.dim(),
    };
    dims.push(dim(&eng));
    fields.push(FieldTag::Rational);
    for m in 3..=maxdeg {
        if *dims.last().expect("nonempty") == 0 {
            break;
        }
        let tag = backend(m);
        degree_allowed(n, m, tag)?;
        eng = match (eng, tag) {
            (Engine::Q(g), FieldTag::Modular(p)) => {
                let pf = PrimeField::new(p)?;
                Engine::P(
                    g.convert(pf, |q| to_modular(pf, q))
                        .ok_or_else(|| Error::Internal(format!("modulus {p} divides a denominator")))?,
                )
            }
            (e, _) => e,
        };
        match &mut eng {
            Engine::Q(g) => g.step(),
            Engine::P(g) => g.step(),
        }
        dims.push(dim(&eng));
        fields.push(tag);
    }
    while dims.len() <= maxdeg {
        let tag = *fields.last().expect("nonempty");
        dims.push(0);
        fields.push(tag);
    }
    Ok(HilbertData { dims, fields })
}

/// Span dimension of `Σ V^i⊗R⊗V^j` in degree `m`, computed naively from
/// all spanning rows. Only for small cases: it is the test oracle for the
/// incremental engine.
pub fn ideal_rank_naive(n: usize, relations: &Subspace, m: usize) -> usize {
    if m < 2 {
        return 0;
    }
    let mut e = crate::exactla::Echelon::new(Rationals, n.pow(m as u32));
    for i in 0..=(m - 2) {
        let pre = n.pow(i as u32);
        let post = n.pow((m - 2 - i) as u32);
        for p in 0..pre {
            for s in 0..post {
                for r in relations.basis() {
                    let v: SparseVec = r.iter().map(|(c, x)| ((p * n * n + c) * post + s, x.clone())).collect();
                    e.insert(&v);
                }
            }
        }
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::DEFAULT_PRIME;
    use proptest::prelude::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn span(n: usize, vs: &[SparseVec]) -> Subspace {
        Subspace::span(n * n, vs.iter()).unwrap()
    }

    #[test]
    fn free_and_polynomial() {
        let free = hilbert_series(2, &Subspace::zero(4), 4, FieldTag::Rational).unwrap();
        assert_eq!(free.dims, vec![1, 2, 4, 8, 16]);
        // commutative polynomial ring in two variables
        let comm = span(2, &[vec![(1, q(1)), (2, q(-1))]]);
        assert_eq!(hilbert_series(2, &comm, 5, FieldTag::Rational).unwrap().dims, vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn exterior_algebra_vanishes() {
        let n = 3;
        let mut rels = Vec::new();
        for a in 0..n {
            for b in a..n {
                if a == b {
                    rels.push(vec![(a * n + a, q(1))]);
                } else {
                    rels.push(vec![(a * n + b, q(1)), (b * n + a, q(1))]);
                }
            }
        }
        let h = hilbert_series(n, &span(n, &rels), 7, FieldTag::Rational).unwrap();
        assert_eq!(h.dims, vec![1, 3, 3, 1, 0, 0, 0, 0]);
        assert_eq!(h.trimmed(), vec![1, 3, 3, 1]);
        assert!(h.exact());
    }

    #[test]
    fn budget_refusals() {
        assert!(degree_allowed(16, 5, FieldTag::Rational).is_err());
        assert!(degree_allowed(16, 5, FieldTag::Modular(7)).is_ok());
        assert!(degree_allowed(16, 6, FieldTag::Modular(7)).is_err());
        assert!(degree_allowed(2, 12, FieldTag::Rational).is_ok());
        // free algebra: nothing vanishes, so degree 5 is refused
        let r = Subspace::zero(16 * 16);
        assert!(matches!(hilbert_series(16, &r, 5, FieldTag::Rational), Err(Error::Budget(_))));
        // everything vanishes from degree 2 on, so any degree is fine
        let all = Subspace::full(16 * 16);
        assert_eq!(hilbert_series(16, &all, 9, FieldTag::Rational).unwrap().trimmed(), vec![1, 16]);
    }

    #[test]
    fn modular_degree_five() {
        let comm = span(2, &[vec![(1, q(1)), (2, q(-1))]]);
        let h = hilbert_series(2, &comm, 6, FieldTag::Modular(7)).unwrap();
        assert_eq!(h.dims, vec![1, 2, 3, 4, 5, 6, 7]);
        // small degrees stay rational
        assert!(h.exact());
        // polynomial ring in ten variables: 10^5 words in degree 5
        let n = 10;
        let comm: Vec<SparseVec> = (0..n)
            .flat_map(|a| ((a + 1)..n).map(move |b| vec![(a * n + b, q(1)), (b * n + a, q(-1))]))
            .collect();
        let h = hilbert_series(n, &span(n, &comm), 5, FieldTag::Modular(DEFAULT_PRIME)).unwrap();
        assert_eq!(h.dims, vec![1, 10, 55, 220, 715, 2002]);
        assert_eq!(h.fields[5], FieldTag::Modular(DEFAULT_PRIME));
        assert!(!h.exact());
    }

    fn arb_relations() -> impl Strategy<Value = (usize, Vec<SparseVec>)> {
        (2usize..=3).prop_flat_map(|n| {
            let nn = n * n;
            (
                Just(n),
                prop::collection::vec(prop::collection::btree_map(0..nn, -2i64..=2, 1..4), 0..4).prop_map(|vs| {
                    vs.into_iter()
                        .map(|m| m.into_iter().filter(|(_, v)| *v != 0).map(|(c, v)| (c, q(v))).collect::<SparseVec>())
                        .filter(|v| !v.is_empty())
                        .collect()
                }),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn incremental_matches_naive((n, rels) in arb_relations()) {
            let r = span(n, &rels);
            let h = hilbert_series(n, &r, 4, FieldTag::Rational).unwrap();
            for m in 2..=4 {
                let naive = n.pow(m as u32) - ideal_rank_naive(n, &r, m);
                prop_assert_eq!(h.dims[m], naive as u128, "degree {}", m);
            }
            prop_assert_eq!(h.dims[2], (n * n - r.dim()) as u128);
        }

        #[test]
        fn modular_bounds_rational((n, rels) in arb_relations()) {
            let r = span(n, &rels);
            let exact = hilbert_series(n, &r, 5, FieldTag::Rational).unwrap();
            let modp = hilbert_series(n, &r, 5, FieldTag::Modular(5)).unwrap();
            prop_assert_eq!(&exact.dims[..5], &modp.dims[..5]);
            prop_assert!(modp.dims[5] >= exact.dims[5]);
        }
    }
}
