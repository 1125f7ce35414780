//! Printed relation schemas, expanded over all admissible index tuples.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::quadpres::Relation;
use crate::reflgroups::{GroupSpec, Label, Series};

pub(crate) fn u(i: u8, j: u8) -> Label {
    Label::Transposition(i, j)
}

pub(crate) fn uu(i: u8, j: u8) -> Label {
    Label::DoubleTransposition(i, j)
}

pub(crate) fn r(k: u8) -> Label {
    Label::ShortRoot(k)
}

/// The relation lists stated for the algebras and their duals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RelationList {
    /// Generators of the braided cover ideal, D-type schemas (two-index labels).
    Cover,
    /// The extra cover relations involving `r(k)`.
    CoverR,
    /// Commutator generators of the antisymmetric part, two-index labels.
    Lambda,
    /// The extra antisymmetric relations involving `r(k)`.
    LambdaR,
    /// The presentation of `U(tr_n)`: disjoint commutators and the triangle sums.
    Trace,
    /// Chain of equal products of three transposition duals.
    DualChain,
    /// Dual relations mixing `u*` and `uu*`, plus `u*(ij)uu*(ij) = 0`.
    DualMixed,
    /// Dual chain through `r*`.
    DualR,
}

impl RelationList {
    pub const ALL: [RelationList; 8] = [
        RelationList::Cover,
        RelationList::CoverR,
        RelationList::Lambda,
        RelationList::LambdaR,
        RelationList::Trace,
        RelationList::DualChain,
        RelationList::DualMixed,
        RelationList::DualR,
    ];

    pub fn applies_to(&self, series: Series) -> bool {
        match self {
            RelationList::Cover | RelationList::Lambda | RelationList::DualMixed => series != Series::A,
            RelationList::CoverR | RelationList::LambdaR | RelationList::DualR => series == Series::B,
            RelationList::Trace => series == Series::A,
            RelationList::DualChain => true,
        }
    }

    /// True for lists of dual relations.
    pub fn is_dual(&self) -> bool {
        matches!(self, RelationList::DualChain | RelationList::DualMixed | RelationList::DualR)
    }

    /// True for lists meant to lie in the antisymmetric part.
    pub fn is_antisymmetric(&self) -> bool {
        matches!(self, RelationList::Lambda | RelationList::LambdaR | RelationList::Trace)
    }
}

impl fmt::Display for RelationList {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelationList::Cover => "cover",
            RelationList::CoverR => "cover-r",
            RelationList::Lambda => "lambda",
            RelationList::LambdaR => "lambda-r",
            RelationList::Trace => "trace",
            RelationList::DualChain => "dual-chain",
            RelationList::DualMixed => "dual-mixed",
            RelationList::DualR => "dual-r",
        })
    }
}

impl FromStr for RelationList {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        RelationList::ALL
            .into_iter()
            .find(|l| l.to_string() == s.trim())
            .ok_or_else(|| Error::Parse(format!("unknown relation list {s:?}")))
    }
}

fn pairs(n: u8) -> impl Iterator<Item = (u8, u8)> {
    (1..=n).flat_map(move |i| ((i + 1)..=n).map(move |j| (i, j)))
}

fn triples(n: u8) -> impl Iterator<Item = (u8, u8, u8)> {
    (1..=n).flat_map(move |k| ((k + 1)..=n).flat_map(move |j| ((j + 1)..=n).map(move |l| (k, j, l))))
}

/// Ordered pairs of index pairs with disjoint supports, `(i,j) ≠ (k,l)`.
fn disjoint(n: u8) -> impl Iterator<Item = (u8, u8, u8, u8)> {
    pairs(n).flat_map(move |(i, j)| {
        pairs(n).filter(move |&(k, l)| k != i && k != j && l != i && l != j).map(move |(k, l)| (i, j, k, l))
    })
}

/// `lhs - rhs1 - rhs2` for `lhs = rhs1 + rhs2`.
fn three_term(name: String, lhs: (Label, Label), r1: (Label, Label), r2: (Label, Label)) -> Relation {
    Relation::new(name).term(1, lhs.0, lhs.1).term(-1, r1.0, r1.1).term(-1, r2.0, r2.1)
}

/// `[a1,b1] - [a2,b2] - [a3,b3]`
fn comm3(name: String, c: [(Label, Label); 3]) -> Relation {
    let mut rel = Relation::new(name);
    for (s, (a, b)) in [1, -1, -1].into_iter().zip(c) {
        rel = rel.term(s, a, b).term(-s, b, a);
    }
    rel
}

fn disjoint_commutators(n: u8, out: &mut Vec<Relation>, prefix: &str, with_uu: bool) {
    for (i, j, k, l) in disjoint(n) {
        let tag = format!("({i},{j};{k},{l})");
        if (i, j) < (k, l) {
            out.push(Relation::commutator(format!("{prefix}1{tag}"), u(i, j), u(k, l)));
            if with_uu {
                out.push(Relation::commutator(format!("{prefix}2{tag}"), uu(i, j), uu(k, l)));
            }
        }
        if with_uu {
            out.push(Relation::commutator(format!("{prefix}3{tag}"), u(i, j), uu(k, l)));
        }
    }
}

fn cover(n: u8) -> Vec<Relation> {
    let mut out = Vec::new();
    disjoint_commutators(n, &mut out, "duo", true);
    for (i, j) in pairs(n) {
        let tag = format!("({i},{j})");
        out.push(Relation::new(format!("duo4{tag}")).term(1, u(i, j), u(i, j)));
        out.push(Relation::new(format!("duo5{tag}")).term(1, uu(i, j), uu(i, j)));
        out.push(Relation::new(format!("duo6{tag}")).term(1, u(i, j), uu(i, j)).term(1, uu(i, j), u(i, j)));
    }
    let (o, w) = (u, uu);
    for (k, j, l) in triples(n) {
        let t = |m: u8| format!("tri{m}({k},{j},{l})");
        out.push(three_term(t(1), (o(j, l), o(k, j)), (o(k, j), o(k, l)), (o(k, l), o(j, l))));
        out.push(three_term(t(2), (o(k, j), o(j, l)), (o(j, l), o(k, l)), (o(k, l), o(k, j))));
        out.push(three_term(t(3), (w(j, l), w(k, j)), (w(k, j), o(k, l)), (o(k, l), w(j, l))));
        out.push(three_term(t(4), (w(k, j), w(j, l)), (o(j, l), w(k, l)), (w(k, l), o(k, j))));
        out.push(three_term(t(5), (w(j, l), o(k, j)), (o(k, j), w(k, l)), (w(k, l), w(j, l))));
        out.push(three_term(t(6), (w(k, j), o(j, l)), (w(j, l), w(k, l)), (w(k, l), o(k, j))));
        out.push(three_term(t(7), (o(j, l), w(k, j)), (w(k, j), w(k, l)), (w(k, l), o(j, l))));
        out.push(three_term(t(8), (w(k, j), o(j, l)), (o(j, l), w(k, l)), (w(k, l), w(k, j))));
    }
    out
}

fn lambda(n: u8) -> Vec<Relation> {
    let mut out = Vec::new();
    disjoint_commutators(n, &mut out, "antiduo", true);
    let (o, w) = (u, uu);
    for (k, j, l) in triples(n) {
        let t = |m: u8| format!("antitri{m}({k},{j},{l})");
        out.push(comm3(t(1), [(o(j, l), o(k, j)), (o(k, j), o(k, l)), (o(k, l), o(j, l))]));
        out.push(comm3(t(2), [(w(j, l), w(k, j)), (w(k, j), o(k, l)), (o(k, l), w(j, l))]));
        out.push(comm3(t(3), [(w(j, l), o(k, j)), (o(k, j), w(k, l)), (w(k, l), w(j, l))]));
        out.push(comm3(t(4), [(o(j, l), w(k, j)), (w(k, j), w(k, l)), (w(k, l), o(j, l))]));
    }
    out
}

fn r_commutators(n: u8, out: &mut Vec<Relation>) {
    for (i, j) in pairs(n) {
        for k in (1..=n).filter(|&k| k != i && k != j) {
            let tag = format!("({k};{i},{j})");
            out.push(Relation::commutator(format!("rk_comm_u{tag}"), r(k), u(i, j)));
            out.push(Relation::commutator(format!("rk_comm_uu{tag}"), r(k), uu(i, j)));
        }
    }
}

fn cover_r(n: u8) -> Vec<Relation> {
    let mut out = Vec::new();
    r_commutators(n, &mut out);
    for (j, k) in pairs(n) {
        out.push(Relation::commutator(format!("r_comm({j},{k})"), r(j), r(k)));
    }
    for (i, j) in pairs(n) {
        let tag = format!("({i},{j})");
        out.push(
            Relation::new(format!("r_mix1{tag}"))
                .term(1, r(i), u(i, j))
                .term(-1, uu(i, j), r(i))
                .term(1, r(j), uu(i, j))
                .term(-1, u(i, j), r(j)),
        );
        out.push(
            Relation::new(format!("r_mix2{tag}"))
                .term(1, r(j), u(i, j))
                .term(-1, uu(i, j), r(j))
                .term(1, r(i), uu(i, j))
                .term(-1, u(i, j), r(i)),
        );
    }
    out
}

fn lambda_r(n: u8) -> Vec<Relation> {
    let mut out = Vec::new();
    r_commutators(n, &mut out);
    for (i, j) in pairs(n) {
        let mut rel = Relation::new(format!("r_sum({i},{j})"));
        for x in [r(i), r(j)] {
            for y in [u(i, j), uu(i, j)] {
                rel = rel.term(1, x, y).term(-1, y, x);
            }
        }
        out.push(rel);
    }
    out
}

fn trace(n: u8) -> Vec<Relation> {
    let mut out = Vec::new();
    disjoint_commutators(n, &mut out, "tr_comm", false);
    for (i, j, k) in triples(n) {
        let mut rel = Relation::new(format!("tr_tri({i},{j},{k})"));
        for (a, b) in [(u(i, j), u(i, k)), (u(i, j), u(j, k)), (u(i, k), u(j, k))] {
            rel = rel.term(1, a, b).term(-1, b, a);
        }
        out.push(rel);
    }
    out
}

/// `m_0 = m_1 = …` as consecutive differences `c_s m_s - c_{s+1} m_{s+1}`.
fn chain_relations(name: &str, chain: &Chain) -> Vec<Relation> {
    chain
        .windows(2)
        .enumerate()
        .map(|(s, w)| {
            let ((c0, a0, b0), (c1, a1, b1)) = (w[0], w[1]);
            Relation::new(format!("{name}.{}", s + 1)).term(c0 as i64, a0, b0).term(-c1 as i64, a1, b1)
        })
        .collect()
}

/// Printed equalities `c_0·m_0 = c_1·m_1 = …` between dual monomials.
pub(crate) type Chain = Vec<(i8, Label, Label)>;

/// `u*(ij)u*(jk) = u*(ik)u*(jk) = u*(jk)u*(ij) = u*(ij)u*(ik)`, `i<j<k`.
pub(crate) fn dual_chain(i: u8, j: u8, k: u8) -> Chain {
    vec![(1, u(i, j), u(j, k)), (1, u(i, k), u(j, k)), (1, u(j, k), u(i, j)), (1, u(i, j), u(i, k))]
}

/// The three mixed chains on `k<j<l`, keyed by their `u*` factor.
pub(crate) fn dual_mixed(k: u8, j: u8, l: u8) -> [Chain; 3] {
    let (o, w) = (u, uu);
    [
        vec![(1, w(j, l), w(k, l)), (-1, o(k, j), w(j, l)), (-1, o(k, j), w(k, l))],
        vec![(1, w(k, l), w(k, j)), (1, o(j, l), w(k, l)), (-1, o(j, l), w(k, j))],
        vec![(1, w(k, j), w(j, l)), (1, o(k, l), w(j, l)), (-1, o(k, l), w(k, j))],
    ]
}

/// `r*(i)u*(ij) = r*(i)uu*(ij) = r*(j)u*(ij) = r*(j)uu*(ij)`.
pub(crate) fn dual_r_chain(i: u8, j: u8) -> Chain {
    vec![(1, r(i), u(i, j)), (1, r(i), uu(i, j)), (1, r(j), u(i, j)), (1, r(j), uu(i, j))]
}

/// The printed list, expanded over every admissible index tuple in a fixed
/// order. Dual lists are read over the dual generators `u*`, `uu*`, `r*`,
/// written with the same labels.
pub fn paper_relations(spec: &GroupSpec, list: RelationList) -> Result<Vec<Relation>> {
    if !list.applies_to(spec.series) {
        return Err(Error::NotApplicable(format!("relation list {list} for series {}", spec.series)));
    }
    let n = spec.rank as u8;
    Ok(match list {
        RelationList::Cover => cover(n),
        RelationList::CoverR => cover_r(n),
        RelationList::Lambda => lambda(n),
        RelationList::LambdaR => lambda_r(n),
        RelationList::Trace => trace(n),
        RelationList::DualChain => {
            triples(n).flat_map(|(i, j, k)| chain_relations(&format!("dual_chain({i},{j},{k})"), &dual_chain(i, j, k))).collect()
        }
        RelationList::DualMixed => {
            let mut out = Vec::new();
            for (k, j, l) in triples(n) {
                for (tag, c) in ["a", "b", "c"].iter().zip(dual_mixed(k, j, l)) {
                    out.extend(chain_relations(&format!("dual_ww_{tag}({k},{j},{l})"), &c));
                }
            }
            for (i, j) in pairs(n) {
                out.push(Relation::new(format!("dual_square({i},{j})")).term(1, u(i, j), uu(i, j)));
            }
            out
        }
        RelationList::DualR => {
            pairs(n).flat_map(|(i, j)| chain_relations(&format!("dual_r_chain({i},{j})"), &dual_r_chain(i, j))).collect()
        }
    })
}

/// The lists whose union should generate the braided cover (`antisymmetric =
/// false`) or its antisymmetric part (`true`).
pub fn generating_lists(series: Series, antisymmetric: bool) -> Vec<RelationList> {
    match (series, antisymmetric) {
        (Series::A, _) => vec![RelationList::Trace],
        (Series::D, false) => vec![RelationList::Cover],
        (Series::D, true) => vec![RelationList::Lambda],
        (Series::B, false) => vec![RelationList::Cover, RelationList::CoverR],
        (Series::B, true) => vec![RelationList::Lambda, RelationList::LambdaR],
    }
}

/// The dual relation lists for a series.
pub fn dual_lists(series: Series) -> Vec<RelationList> {
    RelationList::ALL.into_iter().filter(|l| l.is_dual() && l.applies_to(series)).collect()
}
