//! Quadratic presentations `T(V)/(R)`: the braided cover, its antisymmetric
//! part, quadratic duals and graded dimensions.

mod graded;

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

pub use graded::{degree_allowed, hilbert_series, ideal_rank_naive, HilbertData, SMALL_DEGREE_WORDS};

use crate::error::{Error, Result};
use crate::exactla::{kernel, sparse_from_terms, FieldTag, PairingConvention, Rational, SparseMatrix, SparseVec, Subspace};
use crate::ydbraid::{BraidedSpace, GeneratorLabel};

/// Where a relation space came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Provenance {
    QuadKernel,
    LambdaPart,
    DualOf(Box<Provenance>, PairingConvention),
    ExplicitList,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::QuadKernel => f.write_str("quad-kernel"),
            Provenance::LambdaPart => f.write_str("lambda-part"),
            Provenance::DualOf(p, c) => write!(f, "dual-of({p},{c})"),
            Provenance::ExplicitList => f.write_str("explicit-list"),
        }
    }
}

impl std::str::FromStr for Provenance {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "quad-kernel" => Ok(Provenance::QuadKernel),
            "lambda-part" => Ok(Provenance::LambdaPart),
            "explicit-list" => Ok(Provenance::ExplicitList),
            other => {
                let inner = other
                    .strip_prefix("dual-of(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::Parse(format!("unknown provenance {other:?}")))?;
                let (p, c) = inner
                    .rsplit_once(',')
                    .ok_or_else(|| Error::Parse(format!("unknown provenance {other:?}")))?;
                Ok(Provenance::DualOf(Box::new(p.parse()?), c.parse()?))
            }
        }
    }
}

impl Serialize for Provenance {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Provenance {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A named degree-2 element `Σ c·a⊗b` over labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub name: String,
    pub terms: Vec<(Rational, GeneratorLabel, GeneratorLabel)>,
}

impl Relation {
    pub fn new(name: impl Into<String>) -> Self {
        Relation { name: name.into(), terms: Vec::new() }
    }

    /// Adds `c·a⊗b`.
    pub fn term(mut self, c: i64, a: GeneratorLabel, b: GeneratorLabel) -> Self {
        self.terms.push((Rational::from_integer(c), a, b));
        self
    }

    /// `ab - ba`
    pub fn commutator(name: impl Into<String>, a: GeneratorLabel, b: GeneratorLabel) -> Self {
        Relation::new(name).term(1, a, b).term(-1, b, a)
    }

    /// Coordinates in `V⊗V` for the given basis ordering.
    pub fn to_vector(&self, y: &BraidedSpace) -> Result<SparseVec> {
        let n = y.dim();
        let terms = self
            .terms
            .iter()
            .map(|(c, a, b)| Ok((y.index_of(a)? * n + y.index_of(b)?, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(sparse_from_terms(terms))
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (c, a, b)) in self.terms.iter().enumerate() {
            let neg = c.signum() < 0;
            let abs = if neg { -c } else { c.clone() };
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if abs != Rational::ONE {
                write!(f, "{abs}·")?;
            }
            write!(f, "{a}{b}")?;
        }
        Ok(())
    }
}

/// Generators plus a relation space `R ⊆ V⊗V`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticPresentation {
    generators: Vec<GeneratorLabel>,
    relations: Subspace,
    provenance: Provenance,
}

impl QuadraticPresentation {
    pub fn new(generators: Vec<GeneratorLabel>, relations: Subspace, provenance: Provenance) -> Result<Self> {
        let n = generators.len();
        if relations.ambient() != n * n {
            return Err(Error::DimensionMismatch { expected: n * n, found: relations.ambient() });
        }
        Ok(QuadraticPresentation { generators, relations, provenance })
    }

    pub fn generators(&self) -> &[GeneratorLabel] {
        &self.generators
    }

    pub fn n(&self) -> usize {
        self.generators.len()
    }

    pub fn relations(&self) -> &Subspace {
        &self.relations
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Pairing convention, for duals.
    pub fn convention(&self) -> Option<PairingConvention> {
        match &self.provenance {
            Provenance::DualOf(_, c) => Some(*c),
            _ => None,
        }
    }

    /// `dim A_m`; see [`hilbert_series`] for the backend rules.
    pub fn graded_dimension(&self, m: usize, field: FieldTag) -> Result<u128> {
        Ok(self.hilbert(m, field)?.dims[m])
    }

    pub fn hilbert(&self, maxdeg: usize, field: FieldTag) -> Result<HilbertData> {
        hilbert_series(self.n(), &self.relations, maxdeg, field)
    }

    /// The relation basis as label polynomials.
    pub fn relation_terms(&self) -> Vec<Vec<(Rational, GeneratorLabel, GeneratorLabel)>> {
        let n = self.n();
        self.relations
            .basis()
            .iter()
            .map(|v| v.iter().map(|(c, x)| (x.clone(), self.generators[c / n], self.generators[c % n])).collect())
            .collect()
    }

    /// `{generators, relations, provenance, convention}`.
    pub fn to_json(&self) -> Value {
        let rels: Vec<Value> = self
            .relation_terms()
            .into_iter()
            .map(|r| {
                Value::Array(
                    r.into_iter().map(|(c, a, b)| json!([c, [a.to_string(), b.to_string()]])).collect(),
                )
            })
            .collect();
        json!({
            "generators": self.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "relations": rels,
            "provenance": self.provenance.to_string(),
            "convention": self.convention().map(|c| c.to_string()),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        #[derive(Deserialize)]
        struct Raw {
            generators: Vec<GeneratorLabel>,
            relations: Vec<Vec<(Rational, (GeneratorLabel, GeneratorLabel))>>,
            provenance: Provenance,
        }
        let raw: Raw = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(e.to_string()))?;
        let n = raw.generators.len();
        let pos = |l: &GeneratorLabel| {
            raw.generators.iter().position(|g| g == l).ok_or_else(|| Error::UnknownLabel(l.to_string()))
        };
        let vs = raw
            .relations
            .iter()
            .map(|r| {
                let t = r.iter().map(|(c, (a, b))| Ok((pos(a)? * n + pos(b)?, c.clone()))).collect::<Result<Vec<_>>>()?;
                Ok(sparse_from_terms(t))
            })
            .collect::<Result<Vec<SparseVec>>>()?;
        QuadraticPresentation::new(raw.generators.clone(), Subspace::span(n * n, vs.iter())?, raw.provenance)
    }
}

/// `R = ker(Id + Ψ)`.
pub fn quad_kernel_presentation(y: &BraidedSpace) -> QuadraticPresentation {
    let n2 = y.dim() * y.dim();
    let m = SparseMatrix::identity(n2).add(&y.braiding_matrix()).expect("same shape");
    QuadraticPresentation { generators: y.labels().to_vec(), relations: kernel(&m), provenance: Provenance::QuadKernel }
}

/// `Λ²V`, spanned by `a⊗b - b⊗a`.
pub fn antisymmetric_square(n: usize) -> Subspace {
    let vs: Vec<SparseVec> = (0..n)
        .flat_map(|a| ((a + 1)..n).map(move |b| vec![(a * n + b, Rational::ONE), (b * n + a, -Rational::ONE)]))
        .collect();
    Subspace::span(n * n, vs.iter()).expect("in range")
}

/// `R ∩ Λ²V` of the braided cover.
pub fn lambda_part(p: &QuadraticPresentation) -> Result<QuadraticPresentation> {
    if p.provenance != Provenance::QuadKernel {
        return Err(Error::NotApplicable(format!("lambda part of a {} presentation", p.provenance)));
    }
    let lam = antisymmetric_square(p.n());
    Ok(QuadraticPresentation {
        generators: p.generators.clone(),
        relations: p.relations.intersect(&lam)?,
        provenance: Provenance::LambdaPart,
    })
}

/// `A^!`: relations `R^⊥` under the pairing `c`.
pub fn quadratic_dual(p: &QuadraticPresentation, c: PairingConvention) -> Result<QuadraticPresentation> {
    Ok(QuadraticPresentation {
        generators: p.generators.clone(),
        relations: p.relations.annihilator(c)?,
        provenance: Provenance::DualOf(Box::new(p.provenance.clone()), c),
    })
}

/// The presentation spanned by an explicit relation list.
pub fn explicit_presentation(y: &BraidedSpace, rels: &[Relation]) -> Result<QuadraticPresentation> {
    let n = y.dim();
    let vs = rels.iter().map(|r| r.to_vector(y)).collect::<Result<Vec<_>>>()?;
    QuadraticPresentation::new(y.labels().to_vec(), Subspace::span(n * n, vs.iter())?, Provenance::ExplicitList)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationListCheck {
    /// Per listed relation: does it lie in `R`?
    pub contained: Vec<bool>,
    /// Rank of the list.
    pub independent: usize,
    pub dim_r: usize,
    /// Whether the list spans exactly `R`.
    pub span_equal: bool,
}

impl RelationListCheck {
    pub fn all_contained(&self) -> bool {
        self.contained.iter().all(|b| *b)
    }
}

pub fn relation_list_check(y: &BraidedSpace, p: &QuadraticPresentation, rels: &[Relation]) -> Result<RelationListCheck> {
    if p.generators() != y.labels() {
        return Err(Error::GroupMismatch("presentation and space have different generators".into()));
    }
    let vs = rels.iter().map(|r| r.to_vector(y)).collect::<Result<Vec<_>>>()?;
    let contained = vs.iter().map(|v| p.relations.contains(v)).collect::<Result<Vec<_>>>()?;
    let span = Subspace::span(p.relations.ambient(), vs.iter())?;
    Ok(RelationListCheck {
        contained,
        independent: span.dim(),
        dim_r: p.relations.dim(),
        span_equal: span == p.relations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::oracle::dense_rank;
    use crate::reflgroups::ReflectionLabel::*;
    use crate::ydbraid::{build_yd, build_yd_with, RLabelSign};

    fn yd(s: &str) -> BraidedSpace {
        build_yd(&s.parse().unwrap())
    }

    #[test]
    fn c2_quad_kernel() {
        let minus = build_yd_with(&"B:1".parse().unwrap(), RLabelSign::Minus);
        let q = quad_kernel_presentation(&minus);
        assert_eq!(q.relations().dim(), 1);
        assert_eq!(lambda_part(&q).unwrap().relations().dim(), 0);
        assert_eq!(q.hilbert(5, FieldTag::Rational).unwrap().dims, vec![1, 1, 0, 0, 0, 0]);
        let plus = quad_kernel_presentation(&yd("B:1"));
        assert_eq!(plus.relations().dim(), 0);
        let u = lambda_part(&plus).unwrap();
        assert_eq!(u.hilbert(10, FieldTag::Rational).unwrap().dims, vec![1; 11]);
        let d = quadratic_dual(&u, PairingConvention::Straight).unwrap();
        assert_eq!(d.hilbert(6, FieldTag::Rational).unwrap().trimmed(), vec![1, 1]);
    }

    #[test]
    fn kernel_dimension_matches_dense_oracle() {
        for s in ["A:3", "D:3", "B:2"] {
            let y = yd(s);
            let n2 = y.dim() * y.dim();
            let m = SparseMatrix::identity(n2).add(&y.braiding_matrix()).unwrap();
            let entries: Vec<(usize, usize, Rational)> = m.iter().map(|(r, c, v)| (r, c, v.clone())).collect();
            let r = dense_rank(n2, n2, &entries);
            assert_eq!(quad_kernel_presentation(&y).relations().dim(), n2 - r, "{s}");
        }
    }

    #[test]
    fn lambda_part_properties() {
        for s in ["A:3", "A:4", "D:3", "B:2", "B:3"] {
            let y = yd(s);
            let q = quad_kernel_presentation(&y);
            let l = lambda_part(&q).unwrap();
            assert!(l.relations().is_subspace_of(q.relations()).unwrap());
            assert!(l.relations().is_subspace_of(&antisymmetric_square(y.dim())).unwrap());
            assert!(lambda_part(&l).is_err());
        }
    }

    #[test]
    fn dual_dimensions_and_involution() {
        for s in ["A:3", "D:3", "B:2"] {
            let y = yd(s);
            let l = lambda_part(&quad_kernel_presentation(&y)).unwrap();
            let n2 = y.dim() * y.dim();
            for c in PairingConvention::ALL {
                let d = quadratic_dual(&l, c).unwrap();
                assert_eq!(d.relations().dim() + l.relations().dim(), n2);
                let dd = quadratic_dual(&d, c).unwrap();
                assert_eq!(dd.relations(), l.relations());
                assert_eq!(d.graded_dimension(2, FieldTag::Rational).unwrap(), l.relations().dim() as u128);
                // symmetric tensors lie in the dual relations
                let sym = Relation::new("sym").term(1, y.label(0), y.label(1)).term(1, y.label(1), y.label(0));
                assert!(d.relations().contains(&sym.to_vector(&y).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn relation_list_and_json() {
        let y = yd("D:3");
        let q = quad_kernel_presentation(&y);
        let c = Relation::new("c").term(1, Transposition(1, 2), DoubleTransposition(1, 2)).term(
            1,
            DoubleTransposition(1, 2),
            Transposition(1, 2),
        );
        let comm = Relation::commutator("comm", Transposition(1, 2), DoubleTransposition(1, 2));
        let sq = Relation::new("sq").term(1, Transposition(1, 2), Transposition(1, 2));
        let chk = relation_list_check(&y, &q, &[c.clone(), sq, comm.clone()]).unwrap();
        assert_eq!(chk.contained, vec![true, true, false]);
        assert_eq!(chk.independent, 3);
        assert!(!chk.span_equal);
        assert_eq!(comm.to_string(), "u(1,2)uu(1,2) - uu(1,2)u(1,2)");
        assert_eq!(c.to_string(), "u(1,2)uu(1,2) + uu(1,2)u(1,2)");
        let bad = Relation::new("bad").term(1, ShortRoot(1), ShortRoot(1));
        assert!(relation_list_check(&y, &q, &[bad]).is_err());
        let empty = relation_list_check(&y, &explicit_presentation(&y, &[]).unwrap(), &[]).unwrap();
        assert!(empty.span_equal);

        let l = lambda_part(&q).unwrap();
        let d = quadratic_dual(&l, PairingConvention::Reversed).unwrap();
        let js = d.to_json();
        assert_eq!(js["provenance"], "dual-of(lambda-part,reversed)");
        assert_eq!(js["convention"], "reversed");
        let back = QuadraticPresentation::from_json(&js).unwrap();
        assert_eq!(back, d);
    }
}
