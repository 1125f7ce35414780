//! Generator-level maps between the algebras across series (A into D or B)
//! and ranks (n into n+1), checked in degree 2.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::beerkit::{build_beer, BeerAlgebra};
use crate::error::{Error, Result};
use crate::exactla::{sparse_from_terms, Rational, SparseVec, Subspace};
use crate::reflgroups::{GroupSpec, Label, Series, SignedPermutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MapKind {
    /// `S_n` into `D_n`.
    AtoD(usize),
    /// `S_n` into `B_n`.
    AtoB(usize),
    /// Rank `n` into rank `n+1` within one series.
    RankStep(Series, usize),
    Identity(GroupSpec),
}

impl MapKind {
    pub fn source(&self) -> Result<GroupSpec> {
        match *self {
            MapKind::AtoD(n) | MapKind::AtoB(n) => GroupSpec::new(Series::A, n),
            MapKind::RankStep(s, n) => GroupSpec::new(s, n),
            MapKind::Identity(g) => Ok(g),
        }
    }

    pub fn target(&self) -> Result<GroupSpec> {
        match *self {
            MapKind::AtoD(n) => GroupSpec::new(Series::D, n),
            MapKind::AtoB(n) => GroupSpec::new(Series::B, n),
            MapKind::RankStep(s, n) => GroupSpec::new(s, n + 1),
            MapKind::Identity(g) => Ok(g),
        }
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapKind::AtoD(n) => write!(f, "AtoD:{n}"),
            MapKind::AtoB(n) => write!(f, "AtoB:{n}"),
            MapKind::RankStep(s, n) => write!(f, "step:{s}:{n}"),
            MapKind::Identity(g) => write!(f, "id:{g}"),
        }
    }
}

impl FromStr for MapKind {
    type Err = Error;

    /// `"AtoD:4"`, `"AtoB:3"`, `"step:D:3"`, `"id:D:3"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::Parse(format!("map kind {s:?}: {why}"));
        let rank = |x: &str| x.trim().parse::<usize>().map_err(|_| bad("rank is not a number"));
        let (head, rest) = s.trim().split_once(':').ok_or_else(|| bad("expected KIND:..."))?;
        let kind = match head {
            "AtoD" => MapKind::AtoD(rank(rest)?),
            "AtoB" => MapKind::AtoB(rank(rest)?),
            "step" => {
                let g: GroupSpec = rest.parse()?;
                MapKind::RankStep(g.series, g.rank)
            }
            "id" => MapKind::Identity(rest.parse()?),
            _ => return Err(bad("kind must be AtoD, AtoB, step or id")),
        };
        // validates both ends
        kind.source()?;
        kind.target()?;
        Ok(kind)
    }
}

impl Serialize for MapKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A map on generators `v ↦ sign·φ(v)` together with the group inclusion
/// `j` it is compatible with.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorMap {
    pub kind: MapKind,
    pub source: GroupSpec,
    pub target: GroupSpec,
    pub images: Vec<(Label, i8, Label)>,
}

pub fn build_map(kind: MapKind) -> Result<GeneratorMap> {
    let source = kind.source()?;
    let target = kind.target()?;
    let from = crate::ydbraid::build_yd(&source);
    let to = crate::ydbraid::build_yd(&target);
    let images = from
        .labels()
        .iter()
        .map(|l| {
            // every map here keeps the label's name
            to.index_of(l).map(|_| (*l, 1i8, *l))
        })
        .collect::<Result<Vec<_>>>()?;
    let m = GeneratorMap { kind, source, target, images };
    if !m.is_injective() {
        return Err(Error::Internal(format!("{kind} is not injective on labels")));
    }
    Ok(m)
}

impl GeneratorMap {
    pub fn image(&self, l: &Label) -> Option<(i8, Label)> {
        self.images.iter().find(|(a, _, _)| a == l).map(|(_, s, b)| (*s, *b))
    }

    pub fn is_injective(&self) -> bool {
        let set: BTreeSet<Label> = self.images.iter().map(|(_, _, b)| *b).collect();
        set.len() == self.images.len()
    }

    /// `j`: the source group inside the target group, fixing any new letter.
    pub fn inclusion(&self, g: &SignedPermutation) -> Result<SignedPermutation> {
        let mut im = g.images();
        im.extend((im.len() as i64 + 1)..=(self.target.rank as i64));
        SignedPermutation::from_images(&im)
    }

    /// `p`: forgetting signs, from the target back onto `S_n`. Defined only
    /// for the maps out of series A.
    pub fn projection(&self, g: &SignedPermutation) -> Option<SignedPermutation> {
        if self.source.series != Series::A || self.source.rank != self.target.rank {
            return None;
        }
        let im: Vec<i64> = g.images().iter().map(|x| x.abs()).collect();
        SignedPermutation::from_images(&im).ok()
    }
}

/// Degree-2 findings for one map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismCheck {
    pub kind: MapKind,
    pub source: GroupSpec,
    pub target: GroupSpec,
    pub injective: bool,
    pub coaction_compatible: bool,
    pub relations_preserved: bool,
    pub failing_relations: Vec<String>,
    pub perfect_degree2: bool,
    pub source_relations: usize,
    pub restricted_target_relations: usize,
}

impl MorphismCheck {
    pub fn passed(&self) -> bool {
        self.injective && self.coaction_compatible && self.relations_preserved && self.perfect_degree2
    }
}

/// Both algebras a map runs between.
pub struct MapContext {
    pub map: GeneratorMap,
    pub from: BeerAlgebra,
    pub to: BeerAlgebra,
}

impl MapContext {
    pub fn new(kind: MapKind) -> Result<Self> {
        let map = build_map(kind)?;
        let from = build_beer(&map.source)?;
        let to = build_beer(&map.target)?;
        Ok(MapContext { map, from, to })
    }

    /// `coaction(φ(v)) = j(coaction(v))` for every source label.
    pub fn coaction_compatible(&self) -> Result<bool> {
        for (a, _, b) in &self.map.images {
            let lhs = self.to.space.coaction(b)?;
            let rhs = self.map.inclusion(&self.from.space.coaction(a)?)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Column of `a⊗b` in the source mapped to `(sign, column)` in the target.
    fn tensor_map(&self) -> Result<Vec<(i64, usize)>> {
        let n = self.from.space.dim();
        let n2 = self.to.space.dim();
        let mut one = Vec::with_capacity(n);
        for l in self.from.space.labels() {
            let (s, t) = self.map.image(l).ok_or_else(|| Error::UnknownLabel(l.to_string()))?;
            one.push((s as i64, self.to.space.index_of(&t)?));
        }
        Ok((0..n * n)
            .map(|c| {
                let (sa, a) = one[c / n];
                let (sb, b) = one[c % n];
                (sa * sb, a * n2 + b)
            })
            .collect())
    }

    fn image_of(&self, v: &SparseVec, cols: &[(i64, usize)]) -> SparseVec {
        sparse_from_terms(v.iter().map(|(c, x)| {
            let (s, t) = cols[*c];
            (t, x * &Rational::from_integer(s))
        }))
    }

    /// Every source relation lands in the target relations; the failures
    /// are returned as label polynomials.
    pub fn relations_preserved(&self) -> Result<(bool, Vec<String>)> {
        let cols = self.tensor_map()?;
        let target = self.to.algebra.relations();
        let mut failing = Vec::new();
        let terms = self.from.algebra.relation_terms();
        for (v, t) in self.from.algebra.relations().basis().iter().zip(terms) {
            if !target.contains(&self.image_of(v, &cols))? {
                let s: Vec<String> = t.iter().map(|(c, a, b)| format!("{c}*{a}{b}")).collect();
                failing.push(s.join(" + "));
            }
        }
        Ok((failing.is_empty(), failing))
    }

    /// Target relations restricted to the image of `V⊗V` against the image
    /// of the source relations. Returns `(equal, source dim, restricted dim)`.
    pub fn perfect_subquotient_degree2(&self) -> Result<(bool, usize, usize)> {
        let cols = self.tensor_map()?;
        let amb = self.to.space.dim().pow(2);
        let image = self.from.algebra.relations().map_coordinates(amb, |c| cols[c])?;
        let units: Vec<SparseVec> = cols.iter().map(|&(_, t)| vec![(t, Rational::ONE)]).collect();
        let square = Subspace::span(amb, units.iter())?;
        let restricted = self.to.algebra.relations().intersect(&square)?;
        Ok((restricted == image, image.dim(), restricted.dim()))
    }

    pub fn check(&self) -> Result<MorphismCheck> {
        let (preserved, failing) = self.relations_preserved()?;
        let (perfect, s, r) = self.perfect_subquotient_degree2()?;
        Ok(MorphismCheck {
            kind: self.map.kind,
            source: self.map.source,
            target: self.map.target,
            injective: self.map.is_injective(),
            coaction_compatible: self.coaction_compatible()?,
            relations_preserved: preserved,
            failing_relations: failing,
            perfect_degree2: perfect,
            source_relations: s,
            restricted_target_relations: r,
        })
    }
}

pub fn check_map(kind: MapKind) -> Result<MorphismCheck> {
    MapContext::new(kind)?.check()
}
