//! Rewriting systems over the free algebra in deglex order: normal forms,
//! overlap (PBW) checks, counting of normal words and bounded completion.
//!
//! Internally a letter is its position in the monomial order, so comparing
//! words of equal length is plain lexicographic comparison of byte strings.

mod completion;
mod series;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

pub use completion::truncated_completion;
pub use series::{alternate, check_inverse, koszul_product, poly_mul, series_inverse, series_inverse_int};

use crate::error::{Error, Result};
use crate::exactla::{Rational, SparseVec, Subspace};
use crate::quadpres::QuadraticPresentation;
use crate::reflgroups::{GroupSpec, ReflectionLabel, Series};
use crate::ydbraid::GeneratorLabel;

/// A word, letters being order positions.
pub type Word = Vec<u8>;
/// A polynomial: word to nonzero coefficient.
pub type Poly = BTreeMap<Word, Rational>;

/// `(length, lex)` comparison.
pub fn deglex_cmp(a: &[u8], b: &[u8]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn add_term(p: &mut Poly, w: Word, c: &Rational) {
    if c.is_zero() {
        return;
    }
    match p.get_mut(&w) {
        Some(x) => {
            *x = &*x + c;
            if x.is_zero() {
                p.remove(&w);
            }
        }
        None => {
            p.insert(w, c.clone());
        }
    }
}

/// How to order the generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderSpec {
    /// Transpositions, then double transpositions, each lexicographically.
    PaperD,
    /// As `PaperD`, followed by the sign changes `r(1) < … < r(n)`.
    PaperB,
    /// Lexicographic on indices: `u(i,j) < uu(i,j) < u(i,j+1)`, and `r(k)`
    /// just before `u(k,·)`.
    Lex,
    Custom(Vec<GeneratorLabel>),
}

impl OrderSpec {
    pub fn default_for(spec: &GroupSpec) -> Self {
        match spec.series {
            Series::B => OrderSpec::PaperB,
            _ => OrderSpec::PaperD,
        }
    }
}

impl fmt::Display for OrderSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderSpec::PaperD => f.write_str("paperD"),
            OrderSpec::PaperB => f.write_str("paperB"),
            OrderSpec::Lex => f.write_str("lex"),
            OrderSpec::Custom(l) => {
                let s: Vec<String> = l.iter().map(|x| x.to_string()).collect();
                write!(f, "custom:{}", s.join(","))
            }
        }
    }
}

/// Splits `a(1,2),b(3)` at top-level commas.
fn split_labels(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0usize);
    for (i, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out.into_iter().filter(|x| !x.is_empty()).collect()
}

impl FromStr for OrderSpec {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "paperD" => Ok(OrderSpec::PaperD),
            "paperB" => Ok(OrderSpec::PaperB),
            "lex" => Ok(OrderSpec::Lex),
            other => {
                let list = other.strip_prefix("custom:").unwrap_or(other);
                let labels = split_labels(list).into_iter().map(|x| x.parse()).collect::<Result<Vec<_>>>()?;
                if labels.is_empty() {
                    return Err(Error::Parse(format!("empty order {other:?}")));
                }
                Ok(OrderSpec::Custom(labels))
            }
        }
    }
}

/// A total order on the generators of a presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonomialOrder {
    /// `sorted[r]` is the generator of rank `r`.
    sorted: Vec<GeneratorLabel>,
    /// rank of each generator, indexed like the presentation.
    rank: Vec<u8>,
}

impl MonomialOrder {
    /// Resolves `spec` against a generator list.
    pub fn new(spec: &OrderSpec, generators: &[GeneratorLabel]) -> Result<Self> {
        if generators.len() > 255 {
            return Err(Error::Budget(format!("{} generators do not fit a byte alphabet", generators.len())));
        }
        let mut sorted = generators.to_vec();
        let has_r = generators.iter().any(|g| matches!(g, ReflectionLabel::ShortRoot(_)));
        match spec {
            OrderSpec::PaperD if has_r => {
                return Err(Error::NotApplicable("paperD does not order r-generators; use paperB".into()))
            }
            OrderSpec::PaperD | OrderSpec::PaperB => sorted.sort(),
            OrderSpec::Lex => sorted.sort_by_key(|g| match *g {
                ReflectionLabel::Transposition(i, j) => (i, j, 0),
                ReflectionLabel::DoubleTransposition(i, j) => (i, j, 1),
                ReflectionLabel::ShortRoot(k) => (k, 0, 2),
            }),
            OrderSpec::Custom(list) => {
                let mut a = list.clone();
                let mut b = generators.to_vec();
                a.sort();
                b.sort();
                if a != b {
                    return Err(Error::Parse("custom order must list every generator exactly once".into()));
                }
                sorted = list.clone();
            }
        }
        let mut rank = vec![0u8; generators.len()];
        for (i, g) in generators.iter().enumerate() {
            rank[i] = sorted.iter().position(|x| x == g).expect("permutation") as u8;
        }
        Ok(MonomialOrder { sorted, rank })
    }

    pub fn labels(&self) -> &[GeneratorLabel] {
        &self.sorted
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    /// Rank of the generator with presentation index `i`.
    pub fn rank_of_index(&self, i: usize) -> u8 {
        self.rank[i]
    }
}

/// Rules `lead → rhs` with `rhs` deglex-smaller than `lead`.
#[derive(Debug, Clone)]
pub struct RewritingSystem {
    labels: Vec<GeneratorLabel>,
    rules: BTreeMap<Word, Poly>,
    /// Quadratic leads, `n·a + b`.
    quad: Vec<bool>,
    lengths: Vec<usize>,
    /// `None` once the system is known confluent; otherwise normal words are
    /// a basis only through this degree.
    complete_through: Option<usize>,
}

/// Count of normal words in one degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NormalWordCount {
    pub value: u128,
    /// False when the system is not known to be confluent in this degree;
    /// the value is then only an upper bound.
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfluenceReport {
    pub confluent: bool,
    pub overlaps_checked: usize,
    /// Unresolved overlaps `abc`, as labels, in deglex order.
    pub failing: Vec<Vec<GeneratorLabel>>,
}

impl RewritingSystem {
    /// Rules from the relation space of `p`: the reduced echelon form with
    /// columns in decreasing order, so each rule rewrites the largest word of
    /// a relation.
    pub fn build(p: &QuadraticPresentation, order: &MonomialOrder) -> Result<Self> {
        let n = p.n();
        if order.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: order.len() });
        }
        // position of word (a,b) when words are listed largest first
        let pos = |c: usize| -> usize {
            let (ra, rb) = (order.rank[c / n] as usize, order.rank[c % n] as usize);
            n * n - 1 - (ra * n + rb)
        };
        let r = p.relations().map_coordinates(n * n, |c| (1, pos(c)))?;
        let word = |q: usize| -> Word {
            let x = n * n - 1 - q;
            vec![(x / n) as u8, (x % n) as u8]
        };
        let mut rules = BTreeMap::new();
        for row in r.basis() {
            let lead = word(row[0].0);
            let rhs: Poly = row[1..].iter().map(|(q, x)| (word(*q), -x)).collect();
            rules.insert(lead, rhs);
        }
        Ok(Self::assemble(order.sorted.clone(), rules, Some(2)))
    }

    /// A system from explicit rules over labels in increasing order. Every
    /// right-hand side must be deglex-smaller than its lead.
    pub fn from_rules(labels: Vec<GeneratorLabel>, rules: Vec<(Word, Poly)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (lead, rhs) in rules {
            if lead.is_empty() || lead.iter().any(|x| *x as usize >= labels.len()) {
                return Err(Error::Parse(format!("bad lead {lead:?}")));
            }
            if rhs.keys().any(|w| deglex_cmp(w, &lead) != std::cmp::Ordering::Less || w.iter().any(|x| *x as usize >= labels.len())) {
                return Err(Error::Parse(format!("rule for {lead:?} does not decrease")));
            }
            if map.insert(lead.clone(), rhs).is_some() {
                return Err(Error::Parse(format!("two rules for {lead:?}")));
            }
        }
        Ok(Self::assemble(labels, map, Some(2)))
    }

    fn assemble(labels: Vec<GeneratorLabel>, rules: BTreeMap<Word, Poly>, complete_through: Option<usize>) -> Self {
        let n = labels.len();
        let mut quad = vec![false; n * n];
        let mut lengths: Vec<usize> = Vec::new();
        for lead in rules.keys() {
            if lead.len() == 2 {
                quad[lead[0] as usize * n + lead[1] as usize] = true;
            }
            if !lengths.contains(&lead.len()) {
                lengths.push(lead.len());
            }
        }
        lengths.sort();
        RewritingSystem { labels, rules, quad, lengths, complete_through }
    }

    pub fn labels(&self) -> &[GeneratorLabel] {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn rules(&self) -> &BTreeMap<Word, Poly> {
        &self.rules
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    pub fn is_quadratic(&self) -> bool {
        self.lengths.iter().all(|l| *l == 2)
    }

    pub fn complete_through(&self) -> Option<usize> {
        self.complete_through
    }

    pub fn word(&self, labels: &[GeneratorLabel]) -> Result<Word> {
        labels
            .iter()
            .map(|l| {
                self.labels
                    .iter()
                    .position(|x| x == l)
                    .map(|p| p as u8)
                    .ok_or_else(|| Error::UnknownLabel(l.to_string()))
            })
            .collect()
    }

    pub fn word_labels(&self, w: &[u8]) -> Vec<GeneratorLabel> {
        w.iter().map(|x| self.labels[*x as usize]).collect()
    }

    /// Pairs `(a, b)` that are not the lead of a rule.
    pub fn t_set(&self) -> Vec<(GeneratorLabel, GeneratorLabel)> {
        let n = self.n();
        (0..n * n).filter(|c| !self.quad[*c]).map(|c| (self.labels[c / n], self.labels[c % n])).collect()
    }

    /// First position and length of a lead occurring in `w`.
    fn find_lead(&self, w: &[u8]) -> Option<(usize, usize)> {
        let n = self.n();
        for i in 0..w.len() {
            for &l in &self.lengths {
                if i + l > w.len() {
                    break;
                }
                let hit = if l == 2 {
                    self.quad[w[i] as usize * n + w[i + 1] as usize]
                } else {
                    self.rules.contains_key(&w[i..i + l])
                };
                if hit {
                    return Some((i, l));
                }
            }
        }
        None
    }

    pub fn is_normal(&self, w: &[u8]) -> bool {
        self.find_lead(w).is_none()
    }

    /// Normal form, always rewriting the largest remaining word first.
    pub fn normal_form(&self, p: &Poly) -> Poly {
        let mut work: BTreeMap<(usize, Word), Rational> =
            p.iter().filter(|(_, c)| !c.is_zero()).map(|(w, c)| ((w.len(), w.clone()), c.clone())).collect();
        let mut out = Poly::new();
        while let Some(((_, w), c)) = work.pop_last() {
            match self.find_lead(&w) {
                None => add_term(&mut out, w, &c),
                Some((i, l)) => {
                    for (r, x) in &self.rules[&w[i..i + l]] {
                        let mut nw = Vec::with_capacity(w.len() - l + r.len());
                        nw.extend_from_slice(&w[..i]);
                        nw.extend_from_slice(r);
                        nw.extend_from_slice(&w[i + l..]);
                        let key = (nw.len(), nw);
                        let v = &c * x;
                        match work.get_mut(&key) {
                            Some(y) => {
                                *y = &*y + &v;
                                if y.is_zero() {
                                    work.remove(&key);
                                }
                            }
                            None => {
                                work.insert(key, v);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Normal form of a single word.
    pub fn normal_form_word(&self, w: &[u8]) -> Poly {
        self.normal_form(&Poly::from([(w.to_vec(), Rational::ONE)]))
    }

    /// Checks every overlap `abc` of two quadratic leads `ab`, `bc`.
    pub fn pbw_confluent(&self) -> Result<ConfluenceReport> {
        if !self.is_quadratic() {
            return Err(Error::NotApplicable("overlap check is for quadratic systems".into()));
        }
        let n = self.n();
        let leads: Vec<(u8, u8)> = self.rules.keys().map(|w| (w[0], w[1])).collect();
        let overlaps: Vec<(u8, u8, u8)> = leads
            .iter()
            .flat_map(|&(a, b)| (0..n as u8).filter(move |&c| self.quad[b as usize * n + c as usize]).map(move |c| (a, b, c)))
            .collect();
        let mut failing: Vec<Word> = overlaps
            .par_iter()
            .filter_map(|&(a, b, c)| {
                let mut left = Poly::new();
                for (r, x) in &self.rules[&vec![a, b]] {
                    let mut w = r.clone();
                    w.push(c);
                    add_term(&mut left, w, x);
                }
                let mut right = Poly::new();
                for (r, x) in &self.rules[&vec![b, c]] {
                    let mut w = vec![a];
                    w.extend_from_slice(r);
                    add_term(&mut right, w, x);
                }
                (self.normal_form(&left) != self.normal_form(&right)).then(|| vec![a, b, c])
            })
            .collect();
        failing.sort_by(|x, y| deglex_cmp(x, y));
        Ok(ConfluenceReport {
            confluent: failing.is_empty(),
            overlaps_checked: overlaps.len(),
            failing: failing.iter().map(|w| self.word_labels(w)).collect(),
        })
    }

    /// Runs [`RewritingSystem::pbw_confluent`] and, if it passes, marks the
    /// system as confluent in all degrees.
    pub fn certify(&mut self) -> Result<ConfluenceReport> {
        let rep = self.pbw_confluent()?;
        if rep.confluent {
            self.complete_through = None;
        }
        Ok(rep)
    }

    fn exact_in(&self, m: usize) -> bool {
        self.complete_through.is_none_or(|d| m <= d)
    }

    /// Number of normal words of length `m`.
    pub fn count_normal_words(&self, m: usize) -> NormalWordCount {
        let exact = self.exact_in(m);
        let n = self.n();
        if m == 0 {
            return NormalWordCount { value: 1, exact };
        }
        if self.is_quadratic() {
            let mut cnt = vec![1u128; n];
            for _ in 1..m {
                let mut next = vec![0u128; n];
                for a in 0..n {
                    if cnt[a] == 0 {
                        continue;
                    }
                    for b in 0..n {
                        if !self.quad[a * n + b] {
                            next[b] += cnt[a];
                        }
                    }
                }
                cnt = next;
            }
            return NormalWordCount { value: cnt.iter().sum(), exact };
        }
        // longest suffix that can still start a lead
        let keep = self.lengths.last().copied().unwrap_or(1).saturating_sub(1);
        let mut memo: HashMap<(Word, usize), u128> = HashMap::new();
        let value = self.count_from(&mut Vec::new(), m, keep, &mut memo);
        NormalWordCount { value, exact }
    }

    fn count_from(&self, w: &mut Word, left: usize, keep: usize, memo: &mut HashMap<(Word, usize), u128>) -> u128 {
        if left == 0 {
            return 1;
        }
        let tail = w[w.len().saturating_sub(keep)..].to_vec();
        if let Some(v) = memo.get(&(tail.clone(), left)) {
            return *v;
        }
        let mut total = 0;
        for x in 0..self.n() as u8 {
            w.push(x);
            if self.suffix_normal(w) {
                total += self.count_from(w, left - 1, keep, memo);
            }
            w.pop();
        }
        memo.insert((tail, left), total);
        total
    }

    /// No lead ends at the last letter (assuming the rest was normal).
    fn suffix_normal(&self, w: &[u8]) -> bool {
        self.lengths.iter().all(|&l| l > w.len() || !self.rules.contains_key(&w[w.len() - l..]))
    }

    /// Every normal word of length `m`, in increasing order.
    pub fn normal_words(&self, m: usize) -> Vec<Word> {
        let mut out = vec![Vec::new()];
        for _ in 0..m {
            let mut next = Vec::new();
            for w in &out {
                for x in 0..self.n() as u8 {
                    let mut v = w.clone();
                    v.push(x);
                    if self.suffix_normal(&v) {
                        next.push(v);
                    }
                }
            }
            out = next;
        }
        out
    }

    pub(crate) fn with_rules(&self, rules: BTreeMap<Word, Poly>, complete_through: Option<usize>) -> Self {
        Self::assemble(self.labels.clone(), rules, complete_through)
    }

    pub fn format_poly(&self, p: &Poly) -> String {
        format_poly(&self.labels, p)
    }
}

/// `3·u(1,2)u(1,3) - u(2,3)`, terms in decreasing order; `0` for zero.
pub fn format_poly(labels: &[GeneratorLabel], p: &Poly) -> String {
    if p.is_empty() {
        return "0".to_string();
    }
    let mut terms: Vec<(&Word, &Rational)> = p.iter().collect();
    terms.sort_by(|a, b| deglex_cmp(b.0, a.0));
    let mut s = String::new();
    for (i, (w, c)) in terms.into_iter().enumerate() {
        let neg = c.signum() < 0;
        s.push_str(match (i, neg) {
            (0, true) => "-",
            (0, false) => "",
            (_, true) => " - ",
            (_, false) => " + ",
        });
        let abs = if neg { -c } else { c.clone() };
        if abs != Rational::ONE || w.is_empty() {
            s.push_str(&abs.to_string());
            if !w.is_empty() {
                s.push('·');
            }
        }
        for x in w {
            s.push_str(&labels[*x as usize].to_string());
        }
    }
    s
}

/// A relation space with rows as [`Poly`]s, the inverse of [`RewritingSystem::build`]
/// used to compare presentations. Degree-2 rules only.
pub fn relation_space(rs: &RewritingSystem, generators: &[GeneratorLabel]) -> Result<Subspace> {
    let n = generators.len();
    let idx: HashMap<GeneratorLabel, usize> = generators.iter().enumerate().map(|(i, l)| (*l, i)).collect();
    let col = |a: u8, b: u8| idx[&rs.labels[a as usize]] * n + idx[&rs.labels[b as usize]];
    let mut vs: Vec<SparseVec> = Vec::new();
    for (lead, rhs) in &rs.rules {
        if lead.len() != 2 || rhs.keys().any(|w| w.len() != 2) {
            return Err(Error::NotApplicable("relation space of a non-quadratic system".into()));
        }
        let mut t = vec![(col(lead[0], lead[1]), Rational::ONE)];
        t.extend(rhs.iter().map(|(w, x)| (col(w[0], w[1]), -x)));
        vs.push(crate::exactla::sparse_from_terms(t));
    }
    Subspace::span(n * n, vs.iter())
}
