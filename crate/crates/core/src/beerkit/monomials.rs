//! Reduced monomials of the duals: products of blocks on disjoint index sets.

use std::fmt;

use serde::Serialize;

use super::relations::{r, u, uu};
use crate::reflgroups::{GroupSpec, Label, Series};

/// One factor of a reduced monomial. Indices are 1-based and `root` is the
/// smallest index of the block.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum Block {
    /// `u*(j,i1)…u*(j,ik)`
    Star { root: u8, leaves: Vec<u8> },
    /// `u*(j,i1)…û…u*(j,ik) uu*(j,ip)`; `double` is the omitted `ip`.
    StarDouble { root: u8, leaves: Vec<u8>, double: u8 },
    /// `u*(i1,i2)…u*(i1,ik) uu*(j,i1)`
    Shifted { root: u8, hub: u8, leaves: Vec<u8> },
    /// `u*(j,i1)…u*(j,ik) r*(j)`
    StarR { root: u8, leaves: Vec<u8> },
}

impl Block {
    pub fn root(&self) -> u8 {
        match self {
            Block::Star { root, .. }
            | Block::StarDouble { root, .. }
            | Block::Shifted { root, .. }
            | Block::StarR { root, .. } => *root,
        }
    }

    /// Index set of the block, sorted.
    pub fn support(&self) -> Vec<u8> {
        let mut s = vec![self.root()];
        match self {
            Block::Star { leaves, .. } | Block::StarR { leaves, .. } => s.extend(leaves),
            Block::StarDouble { leaves, double, .. } => {
                s.extend(leaves);
                s.push(*double);
            }
            Block::Shifted { hub, leaves, .. } => {
                s.push(*hub);
                s.extend(leaves);
            }
        }
        s.sort_unstable();
        s
    }

    pub fn word(&self) -> Vec<Label> {
        match self {
            Block::Star { root, leaves } => leaves.iter().map(|&i| u(*root, i)).collect(),
            Block::StarDouble { root, leaves, double } => {
                let mut w: Vec<Label> = leaves.iter().map(|&i| u(*root, i)).collect();
                w.push(uu(*root, *double));
                w
            }
            Block::Shifted { root, hub, leaves } => {
                let mut w: Vec<Label> = leaves.iter().map(|&i| u(*hub, i)).collect();
                w.push(uu(*root, *hub));
                w
            }
            Block::StarR { root, leaves } => {
                let mut w: Vec<Label> = leaves.iter().map(|&i| u(*root, i)).collect();
                w.push(r(*root));
                w
            }
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Block::Star { leaves, .. } => leaves.len(),
            Block::StarDouble { leaves, .. } | Block::Shifted { leaves, .. } | Block::StarR { leaves, .. } => {
                leaves.len() + 1
            }
        }
    }

    /// Whether the block has one of the enumerated shapes. The reduction can
    /// also produce `StarDouble` with the doubled index below every leaf.
    pub fn in_pattern(&self) -> bool {
        let sorted = |v: &[u8]| v.windows(2).all(|w| w[0] < w[1]);
        match self {
            Block::Star { root, leaves } => !leaves.is_empty() && sorted(leaves) && leaves[0] > *root,
            Block::StarR { root, leaves } => sorted(leaves) && leaves.first().is_none_or(|l| l > root),
            Block::StarDouble { root, leaves, double } => {
                sorted(leaves) && !leaves.is_empty() && leaves[0] > *root && double > &leaves[0] && !leaves.contains(double)
            }
            Block::Shifted { root, hub, leaves } => {
                root < hub && sorted(leaves) && leaves.first().is_none_or(|l| l > hub)
            }
        }
    }
}

/// A signless product of blocks ordered by root, with disjoint supports.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ReducedMonomial {
    pub blocks: Vec<Block>,
}

impl ReducedMonomial {
    pub fn one() -> Self {
        ReducedMonomial { blocks: Vec::new() }
    }

    pub fn word(&self) -> Vec<Label> {
        self.blocks.iter().flat_map(|b| b.word()).collect()
    }

    pub fn degree(&self) -> usize {
        self.blocks.iter().map(|b| b.degree()).sum()
    }

    pub fn in_pattern(&self) -> bool {
        self.blocks.iter().all(|b| b.in_pattern())
            && self.blocks.windows(2).all(|w| w[0].root() < w[1].root())
            && {
                let mut all: Vec<u8> = self.blocks.iter().flat_map(|b| b.support()).collect();
                let n = all.len();
                all.sort_unstable();
                all.dedup();
                all.len() == n
            }
    }
}

impl fmt::Display for ReducedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.word().iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// Blocks with root `j` on exactly the index set `{j} ∪ rest`.
fn blocks_on(series: Series, j: u8, rest: &[u8]) -> Vec<Block> {
    let mut out = Vec::new();
    if !rest.is_empty() {
        out.push(Block::Star { root: j, leaves: rest.to_vec() });
    }
    if series == Series::A {
        return out;
    }
    // p = 2..=k
    for p in 1..rest.len() {
        let mut leaves = rest.to_vec();
        let double = leaves.remove(p);
        out.push(Block::StarDouble { root: j, leaves, double });
    }
    if let Some((&hub, leaves)) = rest.split_first() {
        out.push(Block::Shifted { root: j, hub, leaves: leaves.to_vec() });
    }
    if series == Series::B {
        out.push(Block::StarR { root: j, leaves: rest.to_vec() });
    }
    out
}

/// Every product of pattern blocks of total degree `m`, blocks ordered by
/// their smallest index. Series A uses plain stars only.
pub fn reduced_monomials(spec: &GroupSpec, m: usize) -> Vec<ReducedMonomial> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    extend(spec.series, spec.rank as u8, 0, 0, m, &mut cur, &mut out);
    out
}

fn extend(series: Series, n: u8, used: u32, after: u8, m: usize, cur: &mut Vec<Block>, out: &mut Vec<ReducedMonomial>) {
    if m == 0 {
        out.push(ReducedMonomial { blocks: cur.clone() });
        return;
    }
    for j in (after + 1)..=n {
        if used & (1 << j) != 0 {
            continue;
        }
        let free: Vec<u8> = ((j + 1)..=n).filter(|&i| used & (1 << i) == 0).collect();
        // subsets of `free` in increasing order, sizes up to m
        for mask in 0u32..(1 << free.len()) {
            if mask.count_ones() as usize > m {
                continue;
            }
            let rest: Vec<u8> = free.iter().enumerate().filter(|(b, _)| mask & (1 << b) != 0).map(|(_, &i)| i).collect();
            let used2 = rest.iter().fold(used | (1 << j), |acc, &i| acc | (1 << i));
            for b in blocks_on(series, j, &rest) {
                let d = b.degree();
                if d == 0 || d > m {
                    continue;
                }
                cur.push(b);
                extend(series, n, used2, j, m - d, cur, out);
                cur.pop();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(s: &str) -> GroupSpec {
        s.parse().unwrap()
    }

    fn words(ms: &[ReducedMonomial]) -> Vec<String> {
        ms.iter().map(|m| m.to_string()).collect()
    }

    #[test]
    fn d4_degree_three_is_the_printed_list() {
        let mut got = words(&reduced_monomials(&spec("D:4"), 3));
        got.sort();
        let mut printed = vec![
            "u(1,2) u(1,3) u(1,4)",
            "u(1,2) u(1,4) uu(1,3)",
            "u(1,2) u(1,3) uu(1,4)",
            "u(2,3) u(2,4) uu(1,2)",
        ];
        printed.sort();
        assert_eq!(got, printed);
    }

    #[test]
    fn d4_degree_two_by_pattern() {
        let ms = reduced_monomials(&spec("D:4"), 2);
        assert_eq!(ms.len(), 24);
        assert_eq!(ms.iter().filter(|m| m.blocks.len() == 2).count(), 12);
        // printed list of 21 omits everything supported on {1,3,4}
        let on134 = ms.iter().filter(|m| m.blocks.iter().all(|b| b.support() == vec![1, 3, 4])).count();
        assert_eq!(on134, 3);
        assert_eq!(reduced_monomials(&spec("D:4"), 1).len(), 12);
        assert_eq!(reduced_monomials(&spec("D:4"), 4).len(), 0);
    }

    #[test]
    fn small_cases() {
        assert!(reduced_monomials(&spec("B:1"), 2).is_empty());
        assert_eq!(words(&reduced_monomials(&spec("B:1"), 1)), vec!["r(1)"]);
        assert_eq!(reduced_monomials(&spec("B:4"), 1).len(), 16);
        assert_eq!(reduced_monomials(&spec("A:4"), 2).len(), 7);
        assert_eq!(reduced_monomials(&spec("A:4"), 3).len(), 1);
        assert_eq!(reduced_monomials(&spec("D:2"), 0), vec![ReducedMonomial::one()]);
    }

    #[test]
    fn enumerated_monomials_are_well_formed() {
        for s in ["A:5", "D:5", "B:4"] {
            for m in 0..5 {
                let ms = reduced_monomials(&spec(s), m);
                let mut seen = std::collections::BTreeSet::new();
                for x in &ms {
                    assert!(x.in_pattern(), "{x}");
                    assert_eq!(x.degree(), m);
                    assert_eq!(x.word().len(), m);
                    assert!(seen.insert(x.word()));
                }
            }
        }
    }
}
