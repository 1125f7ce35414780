//! Reduction of dual monomials to reduced monomials by the printed case
//! analysis, with every step an application of a printed dual relation.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::Serialize;

use super::monomials::{Block, ReducedMonomial};
use super::relations::{dual_chain, dual_mixed, dual_r_chain, r, u, uu, Chain};
use crate::error::{Error, Result};
use crate::exactla::Rational;
use crate::quadpres::QuadraticPresentation;
use crate::reflgroups::{GroupSpec, Label, Series};
use crate::rewrite::{truncated_completion, MonomialOrder, OrderSpec, Poly, RewritingSystem};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Reduction {
    Zero,
    Reduced { sign: i8, monomial: ReducedMonomial },
    /// No listed case applies. `word` equals `sign` times the input.
    Stuck { sign: i8, word: Vec<Label> },
}

impl Reduction {
    pub fn is_zero(&self) -> bool {
        matches!(self, Reduction::Zero)
    }

    /// `(sign, word)` with `input = sign·word`, or `None` for zero.
    pub fn signed_word(&self) -> Option<(i8, Vec<Label>)> {
        match self {
            Reduction::Zero => None,
            Reduction::Reduced { sign, monomial } => Some((*sign, monomial.word())),
            Reduction::Stuck { sign, word } => Some((*sign, word.clone())),
        }
    }
}

/// Signals from a reduction step.
enum Halt {
    Zero,
    Stuck,
    Err(Error),
}

impl From<Error> for Halt {
    fn from(e: Error) -> Self {
        Halt::Err(e)
    }
}

type Step<T> = std::result::Result<T, Halt>;

fn ends(l: &Label) -> (u8, u8) {
    match *l {
        Label::Transposition(i, j) | Label::DoubleTransposition(i, j) => (i, j),
        Label::ShortRoot(k) => (k, k),
    }
}

fn is_u(l: &Label) -> bool {
    matches!(l, Label::Transposition(..))
}

fn is_uu(l: &Label) -> bool {
    matches!(l, Label::DoubleTransposition(..))
}

fn other(l: &Label, v: u8) -> u8 {
    let (a, b) = ends(l);
    if a == v {
        b
    } else {
        a
    }
}

fn touches(l: &Label, v: u8) -> bool {
    let (a, b) = ends(l);
    a == v || b == v
}

fn sort3(a: u8, b: u8, c: u8) -> (u8, u8, u8) {
    let mut v = [a, b, c];
    v.sort_unstable();
    (v[0], v[1], v[2])
}

/// Which signs the relation chains carry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Signs {
    /// As printed.
    Printed,
    /// With the two sign slips fixed: `u*(jk)u*(ij)` enters the chain with
    /// `-1`, and `u*(jl)uu*(kl) = +u*(jl)uu*(kj)`.
    Corrected,
}

struct State {
    word: Vec<Label>,
    sign: i8,
    signs: Signs,
}

impl State {
    fn chain(&self, i: u8, j: u8, k: u8) -> Chain {
        let mut c = dual_chain(i, j, k);
        if self.signs == Signs::Corrected {
            c[2].0 = -1;
        }
        c
    }

    /// The mixed chain on `k<j<l` whose `u*` factor is `e`.
    fn mixed(&self, k: u8, j: u8, l: u8, e: (u8, u8)) -> Chain {
        let [ca, mut cb, cc] = dual_mixed(k, j, l);
        if self.signs == Signs::Corrected {
            cb[2].0 = 1;
        }
        if e == (k, j) {
            ca
        } else if e == (j, l) {
            cb
        } else {
            cc
        }
    }

    /// Replaces the factors at `p` and `q` by the chain term with factor set
    /// `target`, multiplying in the chain's coefficients. The current pair is
    /// matched as written, or reversed at the cost of one transposition.
    fn rewrite(&mut self, p: usize, q: usize, chain: &Chain, target: [Label; 2]) -> Step<()> {
        let (p, q) = (p.min(q), p.max(q));
        let cur = (self.word[p], self.word[q]);
        let (cs, flip) = if let Some(t) = chain.iter().find(|t| (t.1, t.2) == cur) {
            (t.0, 1)
        } else if let Some(t) = chain.iter().find(|t| (t.2, t.1) == cur) {
            (t.0, -1)
        } else {
            return Err(Error::Internal(format!("pair {}{} not in chain", cur.0, cur.1)).into());
        };
        let t = chain
            .iter()
            .find(|t| (t.1 == target[0] && t.2 == target[1]) || (t.1 == target[1] && t.2 == target[0]))
            .ok_or_else(|| Error::Internal("target not in chain".into()))?;
        self.word[p] = t.1;
        self.word[q] = t.2;
        self.sign *= cs * t.0 * flip;
        self.check_zero()
    }

    /// Squares and `u*(ij)uu*(ij)` vanish.
    fn check_zero(&self) -> Step<()> {
        let mut seen = BTreeSet::new();
        for l in &self.word {
            if !seen.insert(*l) {
                return Err(Halt::Zero);
            }
        }
        for l in &self.word {
            if let Label::Transposition(i, j) = *l {
                if seen.contains(&uu(i, j)) {
                    return Err(Halt::Zero);
                }
            }
        }
        Ok(())
    }

    fn find(&self, l: &Label) -> Option<usize> {
        self.word.iter().position(|x| x == l)
    }

    /// Turns the connected `u*` factors at `pos` into a star at its smallest
    /// index. Returns `(root, leaves)`.
    fn star(&mut self, pos: &[usize]) -> Step<(u8, Vec<u8>)> {
        let a = pos.iter().map(|&p| ends(&self.word[p]).0).min().expect("nonempty");
        loop {
            let roots: Vec<usize> = pos.iter().copied().filter(|&p| touches(&self.word[p], a)).collect();
            let rest: Vec<usize> = pos.iter().copied().filter(|&p| !touches(&self.word[p], a)).collect();
            if rest.is_empty() {
                let mut leaves: Vec<u8> = roots.iter().map(|&p| other(&self.word[p], a)).collect();
                leaves.sort_unstable();
                return Ok((a, leaves));
            }
            let hit = rest.iter().find_map(|&pf| {
                roots.iter().find(|&&pe| {
                    let x = other(&self.word[pe], a);
                    touches(&self.word[pf], x)
                }).map(|&pe| (pe, pf))
            });
            let (pe, pf) = hit.ok_or_else(|| Error::Internal("star step on a disconnected graph".into()))?;
            let x = other(&self.word[pe], a);
            let y = other(&self.word[pf], x);
            let (i, j, k) = sort3(a, x, y);
            let chain = self.chain(i, j, k);
            self.rewrite(pe, pf, &chain, [u(a, x), u(a, y)])?;
        }
    }

    /// Moves the `uu*` factor at `pf` across the `u*` factor at `pe`.
    fn rotate(&mut self, pf: usize, pe: usize) -> Step<()> {
        let (f, e) = (self.word[pf], self.word[pe]);
        let (a, b) = ends(&e);
        let shared = if touches(&f, a) { a } else { b };
        let x = other(&f, shared);
        let far = other(&e, shared);
        if x == far {
            return Err(Halt::Zero);
        }
        let (_, nf) = Label::ordered_uu(x, far);
        let (k, j, l) = sort3(a, b, x);
        let chain = self.mixed(k, j, l, (a, b));
        self.rewrite(pe, pf, &chain, [e, nf])
    }

    /// Moves `r*(v)` at `pr` across the two-index factor at `pe`.
    fn slide_r(&mut self, pr: usize, pe: usize) -> Step<()> {
        let e = self.word[pe];
        let Label::ShortRoot(v) = self.word[pr] else {
            return Err(Error::Internal("not an r factor".into()).into());
        };
        let (i, j) = ends(&e);
        self.rewrite(pr, pe, &dual_r_chain(i, j), [r(other(&e, v)), e])
    }

    /// Reduces one connected component of the index graph.
    fn component(&mut self, pos: &[usize]) -> Step<Block> {
        let rs: Vec<usize> = pos.iter().copied().filter(|&p| !self.word[p].is_two_index()).collect();
        match rs.len() {
            0 => self.d_component(pos),
            1 => self.r_component(pos),
            _ => Err(Halt::Zero),
        }
    }

    fn r_component(&mut self, pos: &[usize]) -> Step<Block> {
        // rewrites may swap r* with its neighbour, so positions are re-read
        let rpos = |s: &State| pos.iter().copied().find(|&p| !s.word[p].is_two_index()).expect("one r factor");
        let edges = |s: &State| pos.iter().copied().filter(|&p| s.word[p].is_two_index()).collect::<Vec<_>>();
        let rv = |s: &State| ends(&s.word[rpos(s)]).0;
        if edges(self).is_empty() {
            return Ok(Block::StarR { root: rv(self), leaves: Vec::new() });
        }
        // replace every uu* by u*, walking r* to it first
        loop {
            let es = edges(self);
            let Some(pf) = es.iter().copied().find(|&p| is_uu(&self.word[p])) else {
                break;
            };
            let (c, d) = ends(&self.word[pf]);
            let path = self
                .path(&es, rv(self), &|x| x == c || x == d)
                .ok_or_else(|| Error::Internal("r factor cut off".into()))?;
            match path.first() {
                Some(&pe) => self.slide_r(rpos(self), pe)?,
                None => {
                    let v = rv(self);
                    self.rewrite(rpos(self), pf, &dual_r_chain(c, d), [r(v), u(c, d)])?;
                }
            }
        }
        let (a, leaves) = self.star(&edges(self))?;
        let v = rv(self);
        if v != a {
            let pe = self.find(&u(a, v)).ok_or_else(|| Error::Internal("r factor off the star".into()))?;
            self.slide_r(rpos(self), pe)?;
        }
        Ok(Block::StarR { root: a, leaves })
    }

    fn d_component(&mut self, pos: &[usize]) -> Step<Block> {
        let uu_pos = |s: &State| pos.iter().copied().filter(|&p| is_uu(&s.word[p])).collect::<Vec<_>>();
        if uu_pos(self).is_empty() {
            let (root, leaves) = self.star(pos)?;
            return Ok(Block::Star { root, leaves });
        }
        // down to a single uu*
        loop {
            let ws = uu_pos(self);
            if ws.len() < 2 {
                break;
            }
            let pair = ws.iter().enumerate().find_map(|(a, &p)| {
                ws[a + 1..]
                    .iter()
                    .find(|&&q| self.word[p].support().iter().any(|v| touches(&self.word[q], *v)))
                    .map(|&q| (p, q))
            });
            if let Some((p, q)) = pair {
                let (f, g) = (self.word[p], self.word[q]);
                let shared = f.support().into_iter().find(|v| touches(&g, *v)).expect("shared");
                let (x, y) = (other(&f, shared), other(&g, shared));
                let (k, j, l) = sort3(x, y, shared);
                // the u* factor is the edge avoiding the shared index
                let chain = self.mixed(k, j, l, (x.min(y), x.max(y)));
                let target = [chain[1].1, chain[1].2];
                self.rewrite(p, q, &chain, target)?;
                continue;
            }
            // walk the first uu* towards the nearest other uu*
            let pf = ws[0];
            let f = self.word[pf];
            let targets: BTreeSet<u8> = ws[1..].iter().flat_map(|&q| self.word[q].support()).collect();
            let edges: Vec<usize> = pos.iter().copied().filter(|&p| p != pf).collect();
            let (c, d) = ends(&f);
            let from_c = self.path(&edges, c, &|v| targets.contains(&v));
            let from_d = self.path(&edges, d, &|v| targets.contains(&v));
            let path = match (from_c, from_d) {
                (Some(a), Some(b)) => if b.len() < a.len() { b } else { a },
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (None, None) => return Err(Error::Internal("uu factors in different components".into()).into()),
            };
            self.rotate(pf, path[0])?;
        }
        let pf = uu_pos(self)[0];
        let us: Vec<usize> = pos.iter().copied().filter(|&p| p != pf).collect();
        let (c, d) = ends(&self.word[pf]);
        if us.is_empty() {
            return Ok(Block::Shifted { root: c, hub: d, leaves: Vec::new() });
        }
        // stars on the components of the u*-graph
        let comps = components(&self.word, &us);
        let mut stars = Vec::new();
        for cpos in &comps {
            stars.push(self.star(cpos)?);
        }
        let covered: BTreeSet<u8> = stars.iter().flat_map(|(a, l)| std::iter::once(*a).chain(l.iter().copied())).collect();
        match (stars.len(), covered.contains(&c), covered.contains(&d)) {
            // the uu* closes a cycle in a spanning star
            (1, true, true) => Err(Halt::Zero),
            (1, _, _) => {
                let (a, leaves) = stars.pop().expect("one star");
                let (y, z) = if covered.contains(&c) { (c, d) } else { (d, c) };
                if y != a {
                    let pe = self.find(&u(a, y)).ok_or_else(|| Error::Internal("leaf edge missing".into()))?;
                    self.rotate(pf, pe)?;
                }
                Ok(if z > a {
                    Block::StarDouble { root: a, leaves, double: z }
                } else {
                    Block::Shifted { root: z, hub: a, leaves }
                })
            }
            _ => Err(Halt::Stuck),
        }
    }

    /// Shortest path of factor positions among `edges`, from vertex `from` to a
    /// vertex satisfying `goal`.
    fn path(&self, edges: &[usize], from: u8, goal: &dyn Fn(u8) -> bool) -> Option<Vec<usize>> {
        if goal(from) {
            return Some(Vec::new());
        }
        let mut prev: BTreeMap<u8, (u8, usize)> = BTreeMap::new();
        let mut queue = VecDeque::from([from]);
        let mut seen = BTreeSet::from([from]);
        while let Some(v) = queue.pop_front() {
            for &p in edges {
                let l = self.word[p];
                if !l.is_two_index() || !touches(&l, v) {
                    continue;
                }
                let w = other(&l, v);
                if !seen.insert(w) {
                    continue;
                }
                prev.insert(w, (v, p));
                if goal(w) {
                    let mut out = Vec::new();
                    let mut cur = w;
                    while cur != from {
                        let (pv, pe) = prev[&cur];
                        out.push(pe);
                        cur = pv;
                    }
                    out.reverse();
                    return Some(out);
                }
                queue.push_back(w);
            }
        }
        None
    }
}

/// Connected components of the index graph of the factors at `pos`, ordered by
/// smallest index; each is a list of positions in increasing order.
fn components(word: &[Label], pos: &[usize]) -> Vec<Vec<usize>> {
    let mut comp: Vec<Vec<usize>> = Vec::new();
    let mut verts: Vec<BTreeSet<u8>> = Vec::new();
    for &p in pos {
        let s: BTreeSet<u8> = word[p].support().into_iter().collect();
        let hits: Vec<usize> = (0..comp.len()).filter(|&c| !verts[c].is_disjoint(&s)).collect();
        let mut ps = vec![p];
        let mut vs = s;
        for &c in hits.iter().rev() {
            ps.extend(comp.remove(c));
            vs.extend(verts.remove(c));
        }
        ps.sort_unstable();
        comp.push(ps);
        verts.push(vs);
    }
    let mut idx: Vec<usize> = (0..comp.len()).collect();
    idx.sort_by_key(|&c| verts[c].iter().next().copied());
    idx.into_iter().map(|c| comp[c].clone()).collect()
}

/// Sign of the permutation taking `from` to `to`; both hold distinct labels.
fn permutation_sign(from: &[Label], to: &[Label]) -> i8 {
    let pos: Vec<usize> = from.iter().map(|l| to.iter().position(|x| x == l).expect("same factors")).collect();
    let mut inv = 0usize;
    for a in 0..pos.len() {
        for b in a + 1..pos.len() {
            if pos[a] > pos[b] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Reduces a monomial in the dual generators. Factors are grouped by the
/// connected components of their index graph, each component is brought to a
/// block by the listed relations, and the blocks are ordered by smallest index.
pub fn algorithm_reduce(spec: &GroupSpec, word: &[Label]) -> Result<Reduction> {
    algorithm_reduce_with(spec, word, Signs::Printed)
}

pub fn algorithm_reduce_with(spec: &GroupSpec, word: &[Label], signs: Signs) -> Result<Reduction> {
    if let Some(bad) = word.iter().find(|l| !l.valid_for(spec)) {
        return Err(Error::UnknownLabel(format!("{bad} for {spec}")));
    }
    if spec.series == Series::A && word.iter().any(|l| !is_u(l)) {
        return Err(Error::UnknownLabel("series A has only u labels".into()));
    }
    let mut st = State { word: word.to_vec(), sign: 1, signs };
    let all: Vec<usize> = (0..word.len()).collect();
    let comps = components(word, &all);
    let mut blocks = Vec::new();
    let mut stuck = false;
    let res: Step<()> = (|| {
        st.check_zero()?;
        for c in &comps {
            match st.component(c) {
                Ok(b) => blocks.push(b),
                Err(Halt::Stuck) => stuck = true,
                Err(h) => return Err(h),
            }
        }
        Ok(())
    })();
    match res {
        Err(Halt::Zero) => return Ok(Reduction::Zero),
        Err(Halt::Err(e)) => return Err(e),
        Err(Halt::Stuck) => unreachable!("handled per component"),
        Ok(()) => {}
    }
    if stuck {
        return Ok(Reduction::Stuck { sign: st.sign, word: st.word });
    }
    blocks.sort_by_key(|b| b.root());
    let monomial = ReducedMonomial { blocks };
    let canon = monomial.word();
    if canon.len() != st.word.len() {
        return Err(Error::Internal("reduction changed the degree".into()));
    }
    let sign = st.sign * permutation_sign(&st.word, &canon);
    Ok(Reduction::Reduced { sign, monomial })
}

/// Canonical normal forms in the dual, from a completed rewriting system.
pub struct NormalFormOracle {
    rs: RewritingSystem,
}

/// Outcome of comparing a reduction with the normal form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    Agree,
    /// Output reduced but not equal to the input.
    Wrong,
    /// The reduction got stuck.
    Stuck,
}

impl NormalFormOracle {
    /// Completes the dual system in the default order through `maxdeg`.
    pub fn new(spec: &GroupSpec, dual: &QuadraticPresentation, maxdeg: usize) -> Result<Self> {
        let order = MonomialOrder::new(&OrderSpec::default_for(spec), dual.generators())?;
        let rs = RewritingSystem::build(dual, &order)?;
        let rs = if maxdeg >= 3 { truncated_completion(&rs, maxdeg)? } else { rs };
        Ok(NormalFormOracle { rs })
    }

    pub fn system(&self) -> &RewritingSystem {
        &self.rs
    }

    pub fn normal_form(&self, word: &[Label]) -> Result<Poly> {
        Ok(self.rs.normal_form_word(&self.rs.word(word)?))
    }

    fn signed(&self, sign: i8, word: &[Label]) -> Result<Poly> {
        let s = Rational::from_integer(sign as i64);
        Ok(self.normal_form(word)?.into_iter().map(|(w, x)| (w, &x * &s)).collect())
    }

    pub fn check(&self, word: &[Label], red: &Reduction) -> Result<Agreement> {
        let nf = self.normal_form(word)?;
        Ok(match red {
            Reduction::Stuck { .. } => Agreement::Stuck,
            Reduction::Zero => {
                if nf.is_empty() {
                    Agreement::Agree
                } else {
                    Agreement::Wrong
                }
            }
            Reduction::Reduced { sign, monomial } => {
                if self.signed(*sign, &monomial.word())? == nf {
                    Agreement::Agree
                } else {
                    Agreement::Wrong
                }
            }
        })
    }
}

/// Tally of reductions checked against the normal form.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AgreementTally {
    pub words: usize,
    pub agree: usize,
    pub wrong: usize,
    pub stuck: usize,
}

impl AgreementTally {
    pub fn add(&mut self, a: Agreement) {
        self.words += 1;
        match a {
            Agreement::Agree => self.agree += 1,
            Agreement::Wrong => self.wrong += 1,
            Agreement::Stuck => self.stuck += 1,
        }
    }

    pub fn all_agree(&self) -> bool {
        self.agree == self.words
    }
}

/// Checks every word of length `m` over the generators.
pub fn exhaustive_agreement(spec: &GroupSpec, oracle: &NormalFormOracle, m: usize, signs: Signs) -> Result<AgreementTally> {
    let labels = oracle.rs.labels().to_vec();
    let n = labels.len();
    let total = n.checked_pow(m as u32).ok_or_else(|| Error::Budget("word count".into()))?;
    let mut tally = AgreementTally::default();
    for code in 0..total {
        let mut c = code;
        let mut w = vec![labels[0]; m];
        for slot in w.iter_mut().rev() {
            *slot = labels[c % n];
            c /= n;
        }
        tally.add(oracle.check(&w, &algorithm_reduce_with(spec, &w, signs)?)?);
    }
    Ok(tally)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::beerkit::build_beer;

    fn spec(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    fn w(s: &str) -> Vec<Label> {
        s.split_whitespace().map(|x| x.parse().unwrap()).collect()
    }

    #[test]
    fn printed_zero_cases() {
        let d4 = spec("D:4");
        assert!(algorithm_reduce(&d4, &w("u(1,2) uu(1,2)")).unwrap().is_zero());
        assert!(algorithm_reduce(&d4, &w("u(1,2) u(1,2)")).unwrap().is_zero());
        assert!(algorithm_reduce(&d4, &w("u(1,2) u(2,3) u(1,3)")).unwrap().is_zero());
    }

    #[test]
    fn reduced_monomials_are_fixed_points() {
        for s in ["D:4", "B:3"] {
            let sp = spec(s);
            for m in 0..=3 {
                for x in crate::beerkit::reduced_monomials(&sp, m) {
                    let red = algorithm_reduce(&sp, &x.word()).unwrap();
                    assert_eq!(red, Reduction::Reduced { sign: 1, monomial: x.clone() }, "{x}");
                }
            }
        }
    }

    #[test]
    fn disjoint_factors_anticommute() {
        let d4 = spec("D:4");
        let a = algorithm_reduce(&d4, &w("u(3,4) uu(1,2)")).unwrap();
        let b = algorithm_reduce(&d4, &w("uu(1,2) u(3,4)")).unwrap();
        let (Reduction::Reduced { sign: sa, monomial: ma }, Reduction::Reduced { sign: sb, monomial: mb }) = (a, b) else {
            panic!("not reduced");
        };
        assert_eq!(ma, mb);
        assert_eq!(sa, -sb);
        assert_eq!(ma.to_string(), "uu(1,2) u(3,4)");
    }

    #[test]
    fn degree_two_tallies() {
        for s in ["D:4", "B:3", "A:4"] {
            let sp = spec(s);
            let beer = build_beer(&sp).unwrap();
            let o = NormalFormOracle::new(&sp, beer.dual(), 3).unwrap();
            let p = exhaustive_agreement(&sp, &o, 2, Signs::Printed).unwrap();
            let c = exhaustive_agreement(&sp, &o, 2, Signs::Corrected).unwrap();
            assert_eq!(p.words, c.words);
            assert!(p.wrong > 0, "{s}: printed signs {p:?}");
            assert!(c.all_agree(), "{s}: corrected signs {c:?}");
        }
    }

    #[test]
    #[ignore]
    fn degree_three_tallies() {
        for s in ["D:4", "B:3", "A:4", "B:2", "D:3"] {
            let sp = spec(s);
            let beer = build_beer(&sp).unwrap();
            let o = NormalFormOracle::new(&sp, beer.dual(), 3).unwrap();
            let p = exhaustive_agreement(&sp, &o, 3, Signs::Printed).unwrap();
            let c = exhaustive_agreement(&sp, &o, 3, Signs::Corrected).unwrap();
            println!("{s} printed {p:?} corrected {c:?}");
        }
    }

    #[test]
    fn outputs_are_well_formed() {
        let sp = spec("D:4");
        let labels = build_beer(&sp).unwrap().dual().generators().to_vec();
        for a in &labels {
            for b in &labels {
                for c in &labels {
                    match algorithm_reduce(&sp, &[*a, *b, *c]).unwrap() {
                        Reduction::Reduced { monomial, .. } => {
                            assert_eq!(monomial.degree(), 3);
                            assert!(monomial.blocks.iter().all(|b| {
                                b.in_pattern() || matches!(b, Block::StarDouble { .. })
                            }));
                        }
                        Reduction::Stuck { word, .. } => assert_eq!(word.len(), 3),
                        Reduction::Zero => {}
                    }
                }
            }
        }
    }
}
