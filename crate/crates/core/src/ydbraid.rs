//! The Yetter-Drinfeld module spanned by the reflections, and its braiding.
//!
//! The action is given on reflections (which generate the group) by the
//! explicit case tables below; other elements act through a canonical
//! factorization. For small groups the whole table can be tabulated by a
//! breadth-first closure, which also detects a factorization-dependent action.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::{Rational, SparseMatrix};
use crate::reflgroups::{enumerate_reflections, GroupSpec, ReflectionLabel, Series, SignedPermutation};

pub type GeneratorLabel = ReflectionLabel;

/// Sign of `s_k ▷ r(k)`. `Plus` is the default; `Minus` makes `r(k)⊗r(k)`
/// braided-antisymmetric (so `r(k)² = 0` in the quadratic cover).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RLabelSign {
    #[default]
    Plus,
    Minus,
}

impl RLabelSign {
    fn sign(self) -> i8 {
        match self {
            RLabelSign::Plus => 1,
            RLabelSign::Minus => -1,
        }
    }
}

impl fmt::Display for RLabelSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RLabelSign::Plus => "plus",
            RLabelSign::Minus => "minus",
        })
    }
}

impl FromStr for RLabelSign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "plus" | "+" | "+1" => Ok(RLabelSign::Plus),
            "minus" | "-" | "-1" => Ok(RLabelSign::Minus),
            o => Err(Error::Parse(format!("unknown r-label sign {o:?}"))),
        }
    }
}

/// `Y_G`: basis labels, the action of the reflections on them, and the
/// degree (coaction) map.
#[derive(Debug, Clone)]
pub struct BraidedSpace {
    spec: GroupSpec,
    r_sign: RLabelSign,
    labels: Vec<GeneratorLabel>,
    index: HashMap<GeneratorLabel, usize>,
    degrees: Vec<SignedPermutation>,
    /// `table[g][x]` = image of label `x` under reflection `labels[g]`.
    table: Vec<Vec<(i8, usize)>>,
}

pub fn build_yd(spec: &GroupSpec) -> BraidedSpace {
    build_yd_with(spec, RLabelSign::Plus)
}

pub fn build_yd_with(spec: &GroupSpec, r_sign: RLabelSign) -> BraidedSpace {
    let refl = enumerate_reflections(spec);
    let labels: Vec<GeneratorLabel> = refl.iter().map(|r| r.label).collect();
    let index: HashMap<GeneratorLabel, usize> = labels.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let degrees = refl.into_iter().map(|r| r.element).collect();
    let table = labels
        .iter()
        .map(|g| {
            labels
                .iter()
                .map(|x| {
                    let (s, y) = display_action(*g, *x, r_sign);
                    (s, index[&y])
                })
                .collect()
        })
        .collect();
    BraidedSpace { spec: *spec, r_sign, labels, index, degrees, table }
}

/// The case tables: action of the reflection `g` on the label `x`.
fn display_action(g: GeneratorLabel, x: GeneratorLabel, r_sign: RLabelSign) -> (i8, GeneratorLabel) {
    use ReflectionLabel::*;
    match g {
        Transposition(k, l) => {
            let sig = |i: u8| if i == k { l } else if i == l { k } else { i };
            match x {
                Transposition(i, j) => sign_of(ReflectionLabel::ordered_u(sig(i), sig(j))),
                DoubleTransposition(i, j) => sign_of(ReflectionLabel::ordered_uu(sig(i), sig(j))),
                ShortRoot(i) => (1, ShortRoot(sig(i))),
            }
        }
        DoubleTransposition(k, l) => {
            let sig = |i: u8| if i == k { l } else if i == l { k } else { i };
            match x {
                Transposition(i, j) | DoubleTransposition(i, j) => {
                    let hits = [i, j].iter().filter(|t| **t == k || **t == l).count();
                    match hits {
                        2 => (-1, x),
                        0 => (1, x),
                        _ => {
                            if matches!(x, Transposition(..)) {
                                sign_of(ReflectionLabel::ordered_uu(sig(i), sig(j)))
                            } else {
                                sign_of(ReflectionLabel::ordered_u(sig(i), sig(j)))
                            }
                        }
                    }
                }
                ShortRoot(i) => {
                    // s_k s_l (kl): the permutation moves r(i) to r(σ i), then
                    // the sign change at σ i contributes the r-sign.
                    let s = if i == k || i == l { r_sign.sign() } else { 1 };
                    (s, ShortRoot(sig(i)))
                }
            }
        }
        ShortRoot(k) => match x {
            Transposition(i, j) if i == k || j == k => (1, DoubleTransposition(i, j)),
            DoubleTransposition(i, j) if i == k || j == k => (1, Transposition(i, j)),
            ShortRoot(i) if i == k => (r_sign.sign(), x),
            _ => (1, x),
        },
    }
}

fn sign_of((swapped, l): (bool, GeneratorLabel)) -> (i8, GeneratorLabel) {
    (if swapped { -1 } else { 1 }, l)
}

impl BraidedSpace {
    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn r_sign(&self) -> RLabelSign {
        self.r_sign
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[GeneratorLabel] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> GeneratorLabel {
        self.labels[i]
    }

    pub fn index_of(&self, l: &GeneratorLabel) -> Result<usize> {
        self.index.get(l).copied().ok_or_else(|| Error::UnknownLabel(format!("{l} in {}", self.spec)))
    }

    /// Parses a label and checks that it belongs to this space.
    pub fn parse_label(&self, s: &str) -> Result<usize> {
        let l: GeneratorLabel = s.parse()?;
        self.index_of(&l)
    }

    /// `δ(x) = s ⊗ x`: the reflection attached to a label.
    pub fn coaction(&self, l: &GeneratorLabel) -> Result<SignedPermutation> {
        Ok(self.degrees[self.index_of(l)?].clone())
    }

    pub fn degree(&self, i: usize) -> &SignedPermutation {
        &self.degrees[i]
    }

    /// Action of the reflection with index `g` on basis index `x`.
    pub fn act_by_reflection(&self, g: usize, x: usize) -> (i8, usize) {
        self.table[g][x]
    }

    /// Factors `g` into reflections `t_1 ⋯ t_m` (returned as label indices,
    /// leftmost first).
    pub fn factor(&self, g: &SignedPermutation) -> Result<Vec<usize>> {
        if !self.spec.contains(g) {
            return Err(Error::GroupMismatch(format!("{g} is not in {}", self.spec)));
        }
        let n = g.rank();
        // g = P·D with D diagonal, applied first.
        let mut perm: Vec<usize> = (0..n).map(|i| g.image(i).1).collect();
        let minus: Vec<u8> = (0..n).filter(|&i| g.image(i).0 < 0).map(|i| i as u8 + 1).collect();
        let mut out = Vec::new();
        for i in 0..n {
            if perm[i] != i {
                let a = perm[i];
                out.push(self.index[&ReflectionLabel::Transposition(i.min(a) as u8 + 1, i.max(a) as u8 + 1)]);
                for p in perm.iter_mut() {
                    if *p == a {
                        *p = i;
                    } else if *p == i {
                        *p = a;
                    }
                }
            }
        }
        match self.spec.series {
            Series::A => {}
            Series::B => out.extend(minus.iter().map(|k| self.index[&ReflectionLabel::ShortRoot(*k)])),
            Series::D => {
                for pair in minus.chunks(2) {
                    // s_a s_b = uu(a,b)·(a b)
                    out.push(self.index[&ReflectionLabel::DoubleTransposition(pair[0], pair[1])]);
                    out.push(self.index[&ReflectionLabel::Transposition(pair[0], pair[1])]);
                }
            }
        }
        Ok(out)
    }

    /// `g ▷ x` on basis indices.
    pub fn act_index(&self, g: &SignedPermutation, x: usize) -> Result<(i8, usize)> {
        let f = self.factor(g)?;
        let mut cur = (1i8, x);
        for t in f.iter().rev() {
            let (s, y) = self.table[*t][cur.1];
            cur = (cur.0 * s, y);
        }
        Ok(cur)
    }

    /// `g ▷ x` on labels.
    pub fn act(&self, g: &SignedPermutation, l: &GeneratorLabel) -> Result<(i8, GeneratorLabel)> {
        let (s, y) = self.act_index(g, self.index_of(l)?)?;
        Ok((s, self.labels[y]))
    }

    /// `Ψ(e_a ⊗ e_b) = (deg(a) ▷ e_b) ⊗ e_a` as a signed permutation of the
    /// `N²` basis tensors, indexed `a·N + b`.
    pub fn braiding(&self) -> Vec<(i8, usize)> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let (s, c) = self.table[a][b];
                out.push((s, c * n + a));
            }
        }
        out
    }

    /// The braiding as a sparse matrix acting on column vectors.
    pub fn braiding_matrix(&self) -> SparseMatrix {
        let n = self.dim();
        let mut m = SparseMatrix::zeros(n * n, n * n);
        for (col, (s, row)) in self.braiding().into_iter().enumerate() {
            m.set(row, col, Rational::from_integer(s as i64)).expect("in range");
        }
        m
    }

    /// Action of every group element, by closure from the reflections.
    /// Fails with `Internal` if two factorizations of an element disagree,
    /// and with `Budget` for groups above 10^5 elements.
    pub fn full_action_table(&self) -> Result<BTreeMap<SignedPermutation, Vec<(i8, usize)>>> {
        if self.spec.order() > 100_000 {
            return Err(Error::Budget(format!("{} has {} elements", self.spec, self.spec.order())));
        }
        let n = self.dim();
        let id = SignedPermutation::identity(self.spec.rank);
        let mut table = BTreeMap::from([(id.clone(), (0..n).map(|x| (1i8, x)).collect::<Vec<_>>())]);
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            let cur = table[&g].clone();
            for (t, act) in self.degrees.iter().zip(&self.table) {
                let tg = t.compose(&g);
                let new: Vec<(i8, usize)> = cur
                    .iter()
                    .map(|&(s1, y)| {
                        let (s2, z) = act[y];
                        (s1 * s2, z)
                    })
                    .collect();
                match table.get(&tg) {
                    Some(old) if *old != new => {
                        return Err(Error::Internal(format!("action of {tg} depends on its factorization")));
                    }
                    Some(_) => {}
                    None => {
                        table.insert(tg.clone(), new);
                        queue.push_back(tg);
                    }
                }
            }
        }
        Ok(table)
    }
}

/// Compose signed permutations of basis indices: `(p∘q)[i] = p[q[i]]`.
fn compose_signed(p: &[(i8, usize)], q: &[(i8, usize)]) -> Vec<(i8, usize)> {
    q.iter()
        .map(|&(s, j)| {
            let (t, k) = p[j];
            (s * t, k)
        })
        .collect()
}

/// `Ψ₁₂Ψ₂₃Ψ₁₂ = Ψ₂₃Ψ₁₂Ψ₂₃` on `Y⊗Y⊗Y`.
pub fn check_braid_relation(y: &BraidedSpace) -> bool {
    let n = y.dim();
    let psi = y.braiding();
    let n2 = n * n;
    let mut p12 = Vec::with_capacity(n2 * n);
    let mut p23 = Vec::with_capacity(n2 * n);
    for idx in 0..n2 * n {
        let (ab, c) = (idx / n, idx % n);
        let (s, t) = psi[ab];
        p12.push((s, t * n + c));
        let (a, bc) = (idx / n2, idx % n2);
        let (s, t) = psi[bc];
        p23.push((s, a * n2 + t));
    }
    let lhs = compose_signed(&p12, &compose_signed(&p23, &p12));
    let rhs = compose_signed(&p23, &compose_signed(&p12, &p23));
    lhs == rhs
}

/// `deg(g ▷ x) = g·deg(x)·g⁻¹` for every reflection `g` and label `x`.
pub fn check_yd_condition(y: &BraidedSpace) -> bool {
    (0..y.dim()).all(|g| {
        let t = y.degree(g);
        (0..y.dim()).all(|x| {
            let (_, z) = y.act_by_reflection(g, x);
            *y.degree(z) == t.compose(y.degree(x)).compose(&t.inverse())
        })
    })
}

/// The YD condition for an arbitrary group element.
pub fn check_yd_condition_for(y: &BraidedSpace, g: &SignedPermutation) -> Result<bool> {
    let gi = g.inverse();
    for x in 0..y.dim() {
        let (_, z) = y.act_index(g, x)?;
        if *y.degree(z) != g.compose(y.degree(x)).compose(&gi) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use ReflectionLabel::*;

    fn yd(s: &str) -> BraidedSpace {
        build_yd(&s.parse().unwrap())
    }

    fn t(n: usize, i: usize, j: usize) -> SignedPermutation {
        SignedPermutation::transposition(n, i, j).unwrap()
    }

    const SMALL: [&str; 9] = ["A:3", "A:4", "D:3", "D:4", "B:1", "B:2", "B:3", "B:4", "D:2"];

    #[test]
    fn display_cases() {
        let d4 = yd("D:4");
        assert_eq!(d4.act(&t(4, 2, 3), &Transposition(1, 2)).unwrap(), (1, Transposition(1, 3)));
        assert_eq!(d4.act(&t(4, 1, 2), &Transposition(1, 2)).unwrap(), (-1, Transposition(1, 2)));
        let b4 = yd("B:4");
        let s = |k| SignedPermutation::sign_flip(4, k).unwrap();
        assert_eq!(b4.act(&s(1), &Transposition(1, 2)).unwrap(), (1, DoubleTransposition(1, 2)));
        assert_eq!(b4.act(&s(3), &ShortRoot(1)).unwrap(), (1, ShortRoot(1)));
        assert_eq!(b4.act(&s(1), &ShortRoot(1)).unwrap(), (1, ShortRoot(1)));
        let b4m = build_yd_with(&"B:4".parse().unwrap(), RLabelSign::Minus);
        assert_eq!(b4m.act(&s(1), &ShortRoot(1)).unwrap(), (-1, ShortRoot(1)));
        assert!(d4.act(&s(1), &Transposition(1, 2)).is_err());
        assert!(d4.act(&t(4, 1, 2), &ShortRoot(1)).is_err());
    }

    #[test]
    fn coaction_is_the_reflection() {
        let d3 = yd("D:3");
        assert_eq!(d3.coaction(&Transposition(1, 2)).unwrap(), t(3, 1, 2));
        let uu = SignedPermutation::from_images(&[-2, -1, 3]).unwrap();
        assert_eq!(d3.coaction(&DoubleTransposition(1, 2)).unwrap(), uu);
        let b2 = yd("B:2");
        assert_eq!(b2.coaction(&ShortRoot(1)).unwrap(), SignedPermutation::sign_flip(2, 1).unwrap());
        assert!(d3.coaction(&ShortRoot(1)).is_err());
    }

    fn psi_of(y: &BraidedSpace, a: GeneratorLabel, b: GeneratorLabel) -> (i8, GeneratorLabel, GeneratorLabel) {
        let n = y.dim();
        let (s, c) = y.braiding()[y.index_of(&a).unwrap() * n + y.index_of(&b).unwrap()];
        (s, y.label(c / n), y.label(c % n))
    }

    #[test]
    fn braiding_cases() {
        let d4 = yd("D:4");
        // the cycle through u(kj)u(kl), k<j<l
        assert_eq!(psi_of(&d4, Transposition(1, 2), Transposition(1, 3)), (1, Transposition(2, 3), Transposition(1, 2)));
        assert_eq!(
            psi_of(&d4, Transposition(1, 3), Transposition(2, 3)),
            (-1, Transposition(1, 2), Transposition(1, 3))
        );
        assert_eq!(psi_of(&d4, Transposition(1, 2), Transposition(3, 4)), (1, Transposition(3, 4), Transposition(1, 2)));
        assert_eq!(
            psi_of(&d4, Transposition(1, 2), Transposition(1, 2)),
            (-1, Transposition(1, 2), Transposition(1, 2))
        );
        let c2 = build_yd_with(&"B:1".parse().unwrap(), RLabelSign::Minus);
        assert_eq!(c2.braiding(), vec![(-1, 0)]);
        assert_eq!(yd("B:1").braiding(), vec![(1, 0)]);
    }

    #[test]
    fn braiding_is_signed_monomial() {
        for s in SMALL {
            let y = yd(s);
            let m = y.braiding_matrix();
            let n2 = y.dim() * y.dim();
            assert_eq!(m.nnz(), n2);
            let rows: std::collections::BTreeSet<usize> = m.iter().map(|(r, _, _)| r).collect();
            assert_eq!(rows.len(), n2, "{s}");
            assert!(m.iter().all(|(_, _, v)| v.is_integer() && v.signum().abs() == 1));
        }
    }

    #[test]
    fn braid_equation_and_yd() {
        for s in SMALL {
            for sign in [RLabelSign::Plus, RLabelSign::Minus] {
                let y = build_yd_with(&s.parse().unwrap(), sign);
                assert!(check_braid_relation(&y), "{s} {sign}");
                assert!(check_yd_condition(&y), "{s} {sign}");
            }
        }
    }

    #[test]
    fn action_is_well_defined() {
        for s in SMALL {
            for sign in [RLabelSign::Plus, RLabelSign::Minus] {
                let y = build_yd_with(&s.parse().unwrap(), sign);
                let table = y.full_action_table().unwrap();
                assert_eq!(table.len() as u128, y.spec().order());
                for (g, row) in &table {
                    for x in 0..y.dim() {
                        assert_eq!(y.act_index(g, x).unwrap(), row[x], "{s} {g}");
                    }
                    assert!(check_yd_condition_for(&y, g).unwrap());
                }
            }
        }
    }

    #[test]
    fn b_braiding_restricts_to_d() {
        for n in 2..=4 {
            let b = yd(&format!("B:{n}"));
            let d = yd(&format!("D:{n}"));
            let (nb, nd) = (b.dim(), d.dim());
            let pb = b.braiding();
            for (c, (s, img)) in d.braiding().into_iter().enumerate() {
                let (a, x) = (d.label(c / nd), d.label(c % nd));
                let bc = b.index_of(&a).unwrap() * nb + b.index_of(&x).unwrap();
                let (sb, ib) = pb[bc];
                assert_eq!(sb, s);
                assert_eq!((b.label(ib / nb), b.label(ib % nb)), (d.label(img / nd), d.label(img % nd)));
            }
        }
    }

    #[test]
    fn large_rank_is_cheap() {
        let y = yd("B:9");
        assert_eq!(y.dim(), 81);
        assert!(y.full_action_table().is_err());
        let g = SignedPermutation::from_images(&[-3, 1, 2, 5, -4, 6, 7, -9, -8]).unwrap();
        assert!(check_yd_condition_for(&y, &g).unwrap());
    }

    fn arb_b4() -> impl Strategy<Value = SignedPermutation> {
        (Just(vec![1i64, 2, 3, 4]).prop_shuffle(), prop::collection::vec(any::<bool>(), 4)).prop_map(|(p, s)| {
            let imgs: Vec<i64> = p.iter().zip(s).map(|(x, neg)| if neg { -x } else { *x }).collect();
            SignedPermutation::from_images(&imgs).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn factorization_independence(g in arb_b4(), h in arb_b4()) {
            for sign in [RLabelSign::Plus, RLabelSign::Minus] {
                let y = build_yd_with(&"B:4".parse().unwrap(), sign);
                for x in 0..y.dim() {
                    let (s1, z1) = y.act_index(&h, x).unwrap();
                    let (s2, z2) = y.act_index(&g, z1).unwrap();
                    prop_assert_eq!(y.act_index(&g.compose(&h), x).unwrap(), (s1 * s2, z2));
                }
            }
        }
    }
}
