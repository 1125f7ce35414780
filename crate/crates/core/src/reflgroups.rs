//! The groups S_n, B_n and D_n as signed permutations, and their reflections.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    A,
    B,
    D,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Series::A => "A",
            Series::B => "B",
            Series::D => "D",
        })
    }
}

impl FromStr for Series {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Series::A),
            "B" | "b" => Ok(Series::B),
            "D" | "d" => Ok(Series::D),
            other => Err(Error::InvalidSpec(other.to_string(), "series must be A, B or D".into())),
        }
    }
}

/// Largest rank accepted; labels and words store indices in a byte.
pub const MAX_RANK: usize = 12;

/// A group of one of the three series. For series A the rank is the number
/// of letters, so `A:n` is S_n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupSpec {
    pub series: Series,
    pub rank: usize,
}

impl GroupSpec {
    pub fn new(series: Series, rank: usize) -> Result<Self> {
        if rank == 0 || rank > MAX_RANK {
            return Err(Error::InvalidSpec(
                format!("{series}:{rank}"),
                format!("rank must lie in 1..={MAX_RANK}"),
            ));
        }
        Ok(GroupSpec { series, rank })
    }

    /// Non-fatal remarks about the spec; D_n for n < 3 is reducible.
    pub fn warnings(&self) -> Vec<String> {
        let mut w = Vec::new();
        if self.series == Series::D && self.rank < 3 {
            w.push(format!("D:{} is a reducible reflection group", self.rank));
        }
        w
    }

    pub fn order(&self) -> u128 {
        let fact: u128 = (1..=self.rank as u128).product();
        match self.series {
            Series::A => fact,
            Series::B => fact << self.rank,
            Series::D => fact << (self.rank - 1),
        }
    }

    pub fn reflection_count(&self) -> usize {
        let n = self.rank;
        match self.series {
            Series::A => n * (n - 1) / 2,
            Series::D => n * (n - 1),
            Series::B => n * n,
        }
    }

    /// Whether `g` lies in this group.
    pub fn contains(&self, g: &SignedPermutation) -> bool {
        if g.rank() != self.rank {
            return false;
        }
        let minus = g.signs.iter().filter(|s| **s < 0).count();
        match self.series {
            Series::A => minus == 0,
            Series::B => true,
            Series::D => minus % 2 == 0,
        }
    }

    /// A generating set: adjacent transpositions, plus `s_n` for B and
    /// `s_{n-1}s_n(n-1,n)` for D.
    pub fn generators(&self) -> Vec<SignedPermutation> {
        let n = self.rank;
        let mut g: Vec<SignedPermutation> =
            (1..n).map(|i| SignedPermutation::transposition(n, i, i + 1).expect("in range")).collect();
        match self.series {
            Series::A => {}
            Series::B => g.push(SignedPermutation::sign_flip(n, n).expect("in range")),
            Series::D if n >= 2 => {
                g.push(ReflectionLabel::DoubleTransposition(n as u8 - 1, n as u8).element(n).expect("in range"))
            }
            Series::D => {}
        }
        g
    }

    /// All group elements, sorted, by closure under [`GroupSpec::generators`].
    pub fn elements(&self) -> Vec<SignedPermutation> {
        let id = SignedPermutation::identity(self.rank);
        let gens = self.generators();
        let mut seen: BTreeSet<SignedPermutation> = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in &gens {
                let h = s.compose(&g);
                if seen.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
        }
        seen.into_iter().collect()
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.series, self.rank)
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    /// Parses `"A:4"`, `"B:3"`, `"D:5"`.
    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidSpec(s.to_string(), "expected SERIES:RANK".into()))?;
        let series: Series = a.parse()?;
        let rank: usize = b
            .trim()
            .parse()
            .map_err(|_| Error::InvalidSpec(s.to_string(), "rank is not a number".into()))?;
        GroupSpec::new(series, rank)
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// The signed permutation `e_i ↦ signs[i]·e_{perm[i]}` (0-based storage).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    perm: Vec<u8>,
    signs: Vec<i8>,
}

impl SignedPermutation {
    pub fn identity(n: usize) -> Self {
        SignedPermutation { perm: (0..n as u8).collect(), signs: vec![1; n] }
    }

    /// From 1-based images: `images[i-1] = ±j` means `e_i ↦ ±e_j`.
    pub fn from_images(images: &[i64]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut perm = Vec::with_capacity(n);
        let mut signs = Vec::with_capacity(n);
        for &x in images {
            let j = x.unsigned_abs() as usize;
            if j == 0 || j > n || seen[j - 1] {
                return Err(Error::Parse(format!("{images:?} is not a signed permutation")));
            }
            seen[j - 1] = true;
            perm.push((j - 1) as u8);
            signs.push(if x < 0 { -1 } else { 1 });
        }
        Ok(SignedPermutation { perm, signs })
    }

    /// The transposition `(i j)`, 1-based.
    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == j || i == 0 || j == 0 || i > n || j > n {
            return Err(Error::Parse(format!("bad transposition ({i},{j}) on {n} letters")));
        }
        let mut g = Self::identity(n);
        g.perm.swap(i - 1, j - 1);
        Ok(g)
    }

    /// `s_k`, changing the sign of `e_k`, 1-based.
    pub fn sign_flip(n: usize, k: usize) -> Result<Self> {
        if k == 0 || k > n {
            return Err(Error::Parse(format!("bad sign flip s_{k} on {n} letters")));
        }
        let mut g = Self::identity(n);
        g.signs[k - 1] = -1;
        Ok(g)
    }

    pub fn rank(&self) -> usize {
        self.perm.len()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, p)| *p as usize == i) && self.signs.iter().all(|s| *s == 1)
    }

    /// Image of `e_i` (0-based) as `(sign, index)`.
    pub fn image(&self, i: usize) -> (i8, usize) {
        (self.signs[i], self.perm[i] as usize)
    }

    /// 1-based signed images, the inverse of [`SignedPermutation::from_images`].
    pub fn images(&self) -> Vec<i64> {
        self.perm.iter().zip(&self.signs).map(|(p, s)| *s as i64 * (*p as i64 + 1)).collect()
    }

    /// `g·h`, i.e. apply `h` first. Panics on a rank mismatch.
    pub fn compose(&self, h: &SignedPermutation) -> SignedPermutation {
        self.multiply(h).expect("ranks agree")
    }

    /// `g·h`, i.e. apply `h` first.
    pub fn multiply(&self, h: &SignedPermutation) -> Result<SignedPermutation> {
        if self.rank() != h.rank() {
            return Err(Error::GroupMismatch(format!("rank {} times rank {}", self.rank(), h.rank())));
        }
        let n = self.rank();
        let mut perm = Vec::with_capacity(n);
        let mut signs = Vec::with_capacity(n);
        for i in 0..n {
            let m = h.perm[i] as usize;
            perm.push(self.perm[m]);
            signs.push(h.signs[i] * self.signs[m]);
        }
        Ok(SignedPermutation { perm, signs })
    }

    pub fn inverse(&self) -> SignedPermutation {
        let n = self.rank();
        let mut perm = vec![0u8; n];
        let mut signs = vec![1i8; n];
        for i in 0..n {
            let m = self.perm[i] as usize;
            perm[m] = i as u8;
            signs[m] = self.signs[i];
        }
        SignedPermutation { perm, signs }
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut g = self.clone();
        while !g.is_identity() {
            g = self.compose(&g);
            k += 1;
        }
        k
    }

    /// Action on a coordinate vector.
    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        let mut out = vec![0; v.len()];
        for (i, x) in v.iter().enumerate() {
            out[self.perm[i] as usize] += self.signs[i] as i64 * x;
        }
        out
    }

    /// Dense matrix; column `i` is the image of `e_i`.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        let n = self.rank();
        let mut m = vec![vec![0; n]; n];
        for i in 0..n {
            m[self.perm[i] as usize][i] = self.signs[i] as i64;
        }
        m
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.images().iter().map(|x| x.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl Serialize for SignedPermutation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SignedPermutation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| serde::de::Error::custom("expected [..]"))?;
        let images: std::result::Result<Vec<i64>, _> =
            inner.split(',').filter(|t| !t.trim().is_empty()).map(|t| t.trim().parse::<i64>()).collect();
        let images = images.map_err(serde::de::Error::custom)?;
        SignedPermutation::from_images(&images).map_err(serde::de::Error::custom)
    }
}

impl std::ops::Mul for &SignedPermutation {
    type Output = SignedPermutation;
    fn mul(self, rhs: &SignedPermutation) -> SignedPermutation {
        self.compose(rhs)
    }
}

/// Name of a reflection, 1-based with `i < j`: `u(i,j)` for `s_{e_i-e_j}`,
/// `uu(i,j)` for `s_{e_i+e_j}`, `r(k)` for `s_{e_k}`. The derived order is
/// the enumeration order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ReflectionLabel {
    Transposition(u8, u8),
    DoubleTransposition(u8, u8),
    ShortRoot(u8),
}

pub type Label = ReflectionLabel;

impl ReflectionLabel {
    /// Normalises the index order of a two-index label and reports whether it
    /// was swapped.
    pub fn ordered_u(i: u8, j: u8) -> (bool, Self) {
        if i < j {
            (false, ReflectionLabel::Transposition(i, j))
        } else {
            (true, ReflectionLabel::Transposition(j, i))
        }
    }

    pub fn ordered_uu(i: u8, j: u8) -> (bool, Self) {
        if i < j {
            (false, ReflectionLabel::DoubleTransposition(i, j))
        } else {
            (true, ReflectionLabel::DoubleTransposition(j, i))
        }
    }

    /// Indices touched by the label.
    pub fn support(&self) -> Vec<u8> {
        match *self {
            ReflectionLabel::Transposition(i, j) | ReflectionLabel::DoubleTransposition(i, j) => vec![i, j],
            ReflectionLabel::ShortRoot(k) => vec![k],
        }
    }

    pub fn max_index(&self) -> usize {
        *self.support().iter().max().expect("nonempty") as usize
    }

    pub fn is_two_index(&self) -> bool {
        !matches!(self, ReflectionLabel::ShortRoot(_))
    }

    /// Whether the label names a reflection of `spec`.
    pub fn valid_for(&self, spec: &GroupSpec) -> bool {
        let ok_idx = match *self {
            ReflectionLabel::Transposition(i, j) | ReflectionLabel::DoubleTransposition(i, j) => {
                i >= 1 && i < j && j as usize <= spec.rank
            }
            ReflectionLabel::ShortRoot(k) => k >= 1 && k as usize <= spec.rank,
        };
        ok_idx
            && match self {
                ReflectionLabel::Transposition(..) => true,
                ReflectionLabel::DoubleTransposition(..) => spec.series != Series::A,
                ReflectionLabel::ShortRoot(_) => spec.series == Series::B,
            }
    }

    /// The reflection as a signed permutation of `n` letters.
    pub fn element(&self, n: usize) -> Result<SignedPermutation> {
        if self.max_index() > n {
            return Err(Error::UnknownLabel(format!("{self} on {n} letters")));
        }
        match *self {
            ReflectionLabel::Transposition(i, j) => SignedPermutation::transposition(n, i as usize, j as usize),
            ReflectionLabel::DoubleTransposition(i, j) => {
                let t = SignedPermutation::transposition(n, i as usize, j as usize)?;
                let si = SignedPermutation::sign_flip(n, i as usize)?;
                let sj = SignedPermutation::sign_flip(n, j as usize)?;
                Ok(si.compose(&sj.compose(&t)))
            }
            ReflectionLabel::ShortRoot(k) => SignedPermutation::sign_flip(n, k as usize),
        }
    }

    /// Root `α` and coroot `α*` with `<α*, α> = 2`.
    pub fn root_data(&self, n: usize) -> (Vec<i64>, Vec<i64>) {
        let mut a = vec![0; n];
        let mut c = vec![0; n];
        match *self {
            ReflectionLabel::Transposition(i, j) => {
                a[i as usize - 1] = 1;
                a[j as usize - 1] = -1;
                c.clone_from(&a);
            }
            ReflectionLabel::DoubleTransposition(i, j) => {
                a[i as usize - 1] = 1;
                a[j as usize - 1] = 1;
                c.clone_from(&a);
            }
            ReflectionLabel::ShortRoot(k) => {
                a[k as usize - 1] = 1;
                c[k as usize - 1] = 2;
            }
        }
        (a, c)
    }
}

impl fmt::Display for ReflectionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReflectionLabel::Transposition(i, j) => write!(f, "u({i},{j})"),
            ReflectionLabel::DoubleTransposition(i, j) => write!(f, "uu({i},{j})"),
            ReflectionLabel::ShortRoot(k) => write!(f, "r({k})"),
        }
    }
}

impl FromStr for ReflectionLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownLabel(s.to_string());
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let open = t.find('(').ok_or_else(bad)?;
        let args = t[open..].strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let nums: Vec<u8> = args
            .split(',')
            .map(|x| x.parse::<u8>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        let label = match (&t[..open], nums.as_slice()) {
            ("u", [i, j]) => ReflectionLabel::Transposition(*i, *j),
            ("uu", [i, j]) => ReflectionLabel::DoubleTransposition(*i, *j),
            ("r", [k]) => ReflectionLabel::ShortRoot(*k),
            _ => return Err(bad()),
        };
        let ok = match label {
            ReflectionLabel::Transposition(i, j) | ReflectionLabel::DoubleTransposition(i, j) => i >= 1 && i < j,
            ReflectionLabel::ShortRoot(k) => k >= 1,
        };
        if ok {
            Ok(label)
        } else {
            Err(bad())
        }
    }
}

impl Serialize for ReflectionLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ReflectionLabel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A reflection `v ↦ v - <α*, v> α` with its label.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Reflection {
    pub label: ReflectionLabel,
    pub element: SignedPermutation,
    pub root: Vec<i64>,
    pub coroot: Vec<i64>,
}

impl Reflection {
    pub fn from_label(label: ReflectionLabel, n: usize) -> Result<Self> {
        let element = label.element(n)?;
        let (root, coroot) = label.root_data(n);
        Ok(Reflection { label, element, root, coroot })
    }

    /// Recognises a signed permutation as a reflection.
    pub fn from_element(g: &SignedPermutation) -> Option<Self> {
        let n = g.rank();
        let moved: Vec<usize> = (0..n).filter(|&i| g.image(i) != (1, i)).collect();
        let label = match moved.as_slice() {
            [k] if g.image(*k) == (-1, *k) => ReflectionLabel::ShortRoot(*k as u8 + 1),
            [i, j] => match (g.image(*i), g.image(*j)) {
                ((1, a), (1, b)) if a == *j && b == *i => ReflectionLabel::Transposition(*i as u8 + 1, *j as u8 + 1),
                ((-1, a), (-1, b)) if a == *j && b == *i => {
                    ReflectionLabel::DoubleTransposition(*i as u8 + 1, *j as u8 + 1)
                }
                _ => return None,
            },
            _ => return None,
        };
        Reflection::from_label(label, n).ok()
    }

    /// `v - <α*, v> α`
    pub fn reflect(&self, v: &[i64]) -> Vec<i64> {
        let p: i64 = self.coroot.iter().zip(v).map(|(a, b)| a * b).sum();
        v.iter().zip(&self.root).map(|(x, a)| x - p * a).collect()
    }
}

/// All reflections of `spec`: transpositions in lexicographic order, then
/// double transpositions, then sign changes.
pub fn enumerate_reflections(spec: &GroupSpec) -> Vec<Reflection> {
    let n = spec.rank;
    let pairs: Vec<(u8, u8)> =
        (1..=n as u8).flat_map(|i| ((i + 1)..=n as u8).map(move |j| (i, j))).collect();
    let mut labels: Vec<ReflectionLabel> = pairs.iter().map(|&(i, j)| ReflectionLabel::Transposition(i, j)).collect();
    if spec.series != Series::A {
        labels.extend(pairs.iter().map(|&(i, j)| ReflectionLabel::DoubleTransposition(i, j)));
    }
    if spec.series == Series::B {
        labels.extend((1..=n as u8).map(ReflectionLabel::ShortRoot));
    }
    labels.into_iter().map(|l| Reflection::from_label(l, n).expect("label in range")).collect()
}

/// The reflection `g s g⁻¹`.
pub fn conjugate(spec: &GroupSpec, g: &SignedPermutation, s: &Reflection) -> Result<Reflection> {
    if !spec.contains(g) {
        return Err(Error::GroupMismatch(format!("{g} is not in {spec}")));
    }
    if !s.label.valid_for(spec) {
        return Err(Error::GroupMismatch(format!("{} is not a reflection of {spec}", s.label)));
    }
    let c = g.multiply(&s.element)?.multiply(&g.inverse())?;
    Reflection::from_element(&c).ok_or_else(|| Error::Internal(format!("conjugate {c} is not a reflection")))
}
