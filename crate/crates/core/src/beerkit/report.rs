//! The verification report: every printed value next to what the engine
//! computes for it.

use std::collections::BTreeSet;

use serde::Serialize;
use serde_json::{json, Value};

use super::algorithm::{exhaustive_agreement, NormalFormOracle, Signs};
use super::monomials::reduced_monomials;
use super::relations::{dual_lists, generating_lists, paper_relations, r, u, uu};
use super::{build_beer_with, BeerAlgebra};
use crate::error::Result;
use crate::exactla::{FieldTag, PairingConvention, Rational, DEFAULT_PRIME};
use crate::quadpres::{relation_list_check, QuadraticPresentation, Relation};
use crate::reflgroups::{GroupSpec, Label, Series};
use crate::rewrite::{koszul_product, series_inverse, series_inverse_int, MonomialOrder, OrderSpec, RewritingSystem};
use crate::ydbraid::RLabelSign;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CheckStatus {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "MISMATCH")]
    Mismatch,
    #[serde(rename = "UNPRINTED")]
    Unprinted,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub anchor: String,
    pub computed: Value,
    pub printed: Option<Value>,
    pub status: CheckStatus,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Conventions {
    pub pairing: PairingConvention,
    pub r_sign: RLabelSign,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub mismatch: usize,
    pub unprinted: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub spec: String,
    pub conventions: Conventions,
    /// Arithmetic used per degree, for the algebra and for its dual.
    pub fields: Value,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|c| c.status == CheckStatus::Mismatch)
    }

    pub fn get(&self, id: &str) -> Option<&CheckRecord> {
        self.checks.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("serializable")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReportOptions {
    /// Degree bound for `U(yb)`.
    pub maxdeg: usize,
    /// Arithmetic for degrees beyond the rational range.
    pub field: FieldTag,
    pub pairing: PairingConvention,
    pub r_sign: RLabelSign,
    /// Largest word count for the exhaustive degree-3 reduction check.
    pub agreement_words: usize,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            maxdeg: 4,
            field: FieldTag::Rational,
            pairing: PairingConvention::Straight,
            r_sign: RLabelSign::Plus,
            agreement_words: 4096,
        }
    }
}

/// Printed Hilbert data: dual polynomial, total dimension if stated, and the
/// series of the algebra.
struct Printed {
    dual: &'static [i128],
    total: Option<i128>,
    series: &'static [i128],
}

fn printed_data(spec: &GroupSpec) -> Option<Printed> {
    match (spec.series, spec.rank) {
        (Series::D, 4) => Some(Printed { dual: &[1, 12, 21, 4], total: Some(38), series: &[1, 12, 123, 1228, 12201, 121116] }),
        (Series::B, 4) => {
            Some(Printed { dual: &[1, 72, 51, 5], total: None, series: &[1, 72, 5133, 365909, 26084025, 1859414106] })
        }
        _ => None,
    }
}

/// The stated Hilbert polynomial of the dual, where one is printed.
pub fn printed_dual_polynomial(spec: &GroupSpec) -> Option<Vec<i128>> {
    printed_data(spec).map(|p| p.dual.to_vec())
}

/// The stated Hilbert series of `U(yb)`, where one is printed.
pub fn printed_series(spec: &GroupSpec) -> Option<Vec<i128>> {
    printed_data(spec).map(|p| p.series.to_vec())
}

/// The stated set of admissible pairs for the dual in the default order.
pub(crate) fn printed_t_set(spec: &GroupSpec) -> Option<BTreeSet<(Label, Label)>> {
    if spec.series == Series::A {
        return None;
    }
    let n = spec.rank as u8;
    let pairs: Vec<(u8, u8)> = (1..=n).flat_map(|i| ((i + 1)..=n).map(move |j| (i, j))).collect();
    let mut t = BTreeSet::new();
    for &(a, b) in &pairs {
        for &(c, d) in &pairs {
            if [c, d].iter().any(|x| *x == a || *x == b) {
                continue;
            }
            t.insert((u(a, b), uu(c, d)));
            if (a, b) < (c, d) {
                t.insert((u(a, b), u(c, d)));
                t.insert((uu(a, b), uu(c, d)));
            }
        }
    }
    for k in 1..=n {
        for j in (k + 1)..=n {
            for l in (j + 1)..=n {
                t.insert((u(k, j), u(k, l)));
                t.insert((u(k, j), uu(k, l)));
                t.insert((u(j, l), uu(k, j)));
            }
        }
    }
    if spec.series == Series::B {
        for &(i, j) in &pairs {
            for k in (1..=n).filter(|&k| k != i && k != j) {
                t.insert((u(i, j), r(k)));
                t.insert((uu(i, j), r(k)));
            }
            t.insert((u(i, j), r(i)));
        }
    }
    Some(t)
}

fn fmt_pair(p: &(Label, Label)) -> String {
    format!("{}{}", p.0, p.1)
}

struct Builder {
    checks: Vec<CheckRecord>,
}

impl Builder {
    fn push(&mut self, id: impl Into<String>, anchor: &str, computed: Value, printed: Option<Value>, status: CheckStatus) {
        self.checks.push(CheckRecord { id: id.into(), anchor: anchor.to_string(), computed, printed, status });
    }

    /// Status `PASS` iff `ok`, with the printed expectation alongside.
    fn claim(&mut self, id: impl Into<String>, anchor: &str, computed: Value, printed: Value, ok: bool) {
        let status = if ok { CheckStatus::Pass } else { CheckStatus::Mismatch };
        self.push(id, anchor, computed, Some(printed), status);
    }

    fn info(&mut self, id: impl Into<String>, anchor: &str, computed: Value) {
        self.push(id, anchor, computed, None, CheckStatus::Unprinted);
    }
}

fn relation_group(b: &mut Builder, beer: &BeerAlgebra, target: &QuadraticPresentation, antisym: bool) -> Result<()> {
    let spec = &beer.spec;
    let kind = if antisym { "lambda" } else { "cover" };
    let space_name = if antisym { "ker(Id+Ψ) ∩ Λ²" } else { "ker(Id+Ψ)" };
    let mut all: Vec<Relation> = Vec::new();
    for list in generating_lists(spec.series, antisym) {
        let rels = paper_relations(spec, list)?;
        let chk = relation_list_check(&beer.space, target, &rels)?;
        let failing: Vec<&str> =
            rels.iter().zip(&chk.contained).filter(|(_, ok)| !**ok).map(|(r, _)| r.name.as_str()).collect();
        let inside = chk.contained.iter().filter(|x| **x).count();
        b.claim(
            format!("relations.{list}.contained"),
            &format!("every listed relation lies in {space_name}"),
            json!({ "instances": rels.len(), "contained": inside, "failing": failing }),
            json!({ "contained": rels.len() }),
            failing.is_empty(),
        );
        all.extend(rels);
    }
    let chk = relation_list_check(&beer.space, target, &all)?;
    b.claim(
        format!("relations.{kind}.span"),
        &format!("the listed relations generate {space_name}"),
        json!({ "independent": chk.independent, "dim_r": chk.dim_r, "span_equal": chk.span_equal }),
        json!({ "span_equal": true }),
        chk.span_equal,
    );
    Ok(())
}

fn dims_json(d: &[u128]) -> Value {
    json!(d.iter().map(|x| x.to_string().parse::<u64>().map(Value::from).unwrap_or_else(|_| json!(x.to_string()))).collect::<Vec<_>>())
}

fn to_i128(v: &[Rational]) -> Vec<Value> {
    v.iter()
        .map(|x| match x.to_i128().and_then(|y| i64::try_from(y).ok()) {
            Some(y) => json!(y),
            None => json!(x.to_string()),
        })
        .collect()
}

/// Runs every check for `spec`. Mismatches are data, not errors.
pub fn verification_report(spec: &GroupSpec, opts: &ReportOptions) -> Result<VerificationReport> {
    let beer = build_beer_with(spec, opts.r_sign)?;
    let dual = beer.dual_for(opts.pairing).clone();
    let printed = printed_data(spec);
    let mut b = Builder { checks: Vec::new() };
    let n = beer.space.dim();

    // generators
    match &printed {
        Some(p) => b.claim(
            "generators",
            "degree-1 coefficient of the printed dual polynomial",
            json!(n),
            json!(p.dual[1]),
            n as i128 == p.dual[1],
        ),
        None => b.info("generators", "number of reflections", json!(n)),
    }

    // relation lists
    match spec.series {
        Series::A => {
            let eq = beer.trace_span_equal()?.unwrap_or(false);
            let rels = paper_relations(spec, super::RelationList::Trace)?;
            let chk = relation_list_check(&beer.space, &beer.algebra, &rels)?;
            b.claim(
                "relations.trace.span",
                "U(yb) of series A is U(tr_n)",
                json!({ "instances": rels.len(), "contained": chk.contained.iter().filter(|x| **x).count(), "dim_r": chk.dim_r, "span_equal": eq }),
                json!({ "span_equal": true }),
                eq && chk.all_contained(),
            );
        }
        _ => {
            relation_group(&mut b, &beer, &beer.cover, false)?;
            relation_group(&mut b, &beer, &beer.algebra, true)?;
        }
    }

    // dual relation lists, under both pairings
    for list in dual_lists(spec.series) {
        let rels = paper_relations(spec, list)?;
        let mut per = serde_json::Map::new();
        let mut active_ok = false;
        for c in PairingConvention::ALL {
            let chk = relation_list_check(&beer.space, beer.dual_for(c), &rels)?;
            let failing: Vec<&str> =
                rels.iter().zip(&chk.contained).filter(|(_, ok)| !**ok).map(|(r, _)| r.name.as_str()).collect();
            if c == opts.pairing {
                active_ok = failing.is_empty();
            }
            per.insert(c.to_string(), json!({ "contained": chk.contained.iter().filter(|x| **x).count(), "failing": failing }));
        }
        b.claim(
            format!("dual.{list}.contained"),
            "every listed dual relation annihilates R",
            json!({ "instances": rels.len(), "by_pairing": per }),
            json!({ "contained": rels.len() }),
            active_ok,
        );
    }

    // duality identity in degree 2
    {
        let dim_r = beer.algebra.relations().dim();
        let mut vals = serde_json::Map::new();
        let mut ok = true;
        for c in PairingConvention::ALL {
            let d2 = beer.dual_for(c).graded_dimension(2, FieldTag::Rational)?;
            ok &= d2 == dim_r as u128;
            vals.insert(c.to_string(), json!(d2 as u64));
        }
        b.claim("duality.degree2", "dim A^!_2 = dim R", json!(vals), json!(dim_r), ok);
    }

    // dual dimensions: linear algebra, pattern count, printed value
    let high = match opts.field {
        FieldTag::Modular(_) => opts.field,
        FieldTag::Rational => FieldTag::Modular(DEFAULT_PRIME),
    };
    let dual_top = opts.maxdeg.max(printed.as_ref().map_or(0, |p| p.dual.len())).max((spec.rank + 1).min(5));
    let dual_h = dual.hilbert(dual_top, high)?;
    let dual_dims = dual_h.trimmed();
    let dual_finite = dual_h.dims.last() == Some(&0);
    for (m, d) in dual_dims.iter().enumerate() {
        let pattern = reduced_monomials(spec, m).len();
        let computed = json!({ "linear_algebra": *d as u64, "pattern": pattern, "field": dual_h.fields[m].to_string() });
        let id = format!("dual.dim.{m}");
        match printed.as_ref().map(|p| p.dual.get(m).copied().unwrap_or(0)) {
            Some(p) => b.claim(id, "coefficient of the printed dual polynomial", computed, json!(p), *d as i128 == p),
            None => b.info(id, "graded dimension of the dual", computed),
        }
        b.claim(
            format!("dual.basis.{m}"),
            "reduced monomials form a basis",
            json!({ "pattern": pattern }),
            json!(*d as u64),
            pattern as u128 == *d,
        );
    }
    let total: u128 = dual_dims.iter().sum();
    match printed.as_ref().and_then(|p| p.total) {
        Some(t) => b.claim("dual.total", "printed total dimension of the dual", json!(total as u64), json!(t), total as i128 == t),
        None => b.info("dual.total", "total dimension of the dual", json!({ "value": total as u64, "finite": dual_finite })),
    }

    // PBW data for the dual in the default order
    if spec.series != Series::A {
        let order = MonomialOrder::new(&OrderSpec::default_for(spec), dual.generators())?;
        let rs = RewritingSystem::build(&dual, &order)?;
        let conf = rs.pbw_confluent()?;
        let t: BTreeSet<(Label, Label)> = rs.t_set().into_iter().collect();
        let pt = printed_t_set(spec).expect("series B or D");
        let missing: Vec<String> = pt.difference(&t).map(fmt_pair).collect();
        let extra: Vec<String> = t.difference(&pt).map(fmt_pair).collect();
        b.claim(
            "dual.t_set",
            "stated set of admissible pairs",
            json!({ "size": t.len(), "not_admissible": missing, "unlisted": extra }),
            json!({ "size": pt.len() }),
            t == pt,
        );
        b.claim(
            "dual.pbw",
            "the reduced monomials are a PBW basis in the stated order",
            json!({ "confluent": conf.confluent, "overlaps_checked": conf.overlaps_checked, "failing_overlaps": conf.failing.len() }),
            json!({ "confluent": true }),
            conf.confluent,
        );
    }

    // algebra dimensions and the Koszul criterion
    let alg = beer.algebra.hilbert(opts.maxdeg, opts.field)?;
    let koszul_series =
        if dual_finite { Some(series_inverse(&dual_dims.iter().map(|d| Rational::from_int128(*d as i128)).collect::<Vec<_>>(), opts.maxdeg.max(5))?) } else { None };
    let series_len = opts.maxdeg.max(printed.as_ref().map_or(0, |p| p.series.len() - 1));
    for m in 0..=series_len {
        let (computed, value) = if m <= opts.maxdeg {
            (json!({ "linear_algebra": alg.dims[m] as u64, "field": alg.fields[m].to_string() }), Some(alg.dims[m] as i128))
        } else if let Some(k) = &koszul_series {
            let v = k[m].to_i128();
            (json!({ "koszul_inversion": to_i128(&k[m..=m])[0] }), v)
        } else {
            continue;
        };
        let id = format!("algebra.dim.{m}");
        match printed.as_ref().and_then(|p| p.series.get(m).copied()) {
            Some(p) => b.claim(id, "coefficient of the printed series", computed, json!(p), value == Some(p)),
            None => b.info(id, "graded dimension of U(yb)", computed),
        }
    }
    if spec.series == Series::B && spec.rank == 1 {
        b.claim(
            "algebra.c2",
            "U(yb) of C_2 is a polynomial ring in one variable",
            dims_json(&alg.dims),
            json!(vec![1; alg.dims.len()]),
            alg.dims.iter().all(|d| *d == 1),
        );
    }
    if alg.exact() && dual_finite {
        let p: Vec<Rational> = alg.dims.iter().map(|d| Rational::from_int128(*d as i128)).collect();
        let q: Vec<Rational> = dual_dims.iter().map(|d| Rational::from_int128(*d as i128)).collect();
        let k = koszul_product(&p, &q, opts.maxdeg);
        let ok = k[0] == Rational::ONE && k[1..].iter().all(|x| x.is_zero());
        b.claim("koszul.criterion", "P(t)·P^!(-t) = 1 through the degree bound", json!(to_i128(&k)), json!(1), ok);
    }

    // internal arithmetic of the printed series
    if let Some(p) = &printed {
        let inv = series_inverse_int(p.dual, p.series.len() - 1)?;
        let ok = inv.iter().zip(p.series).all(|(a, b)| a.to_i128() == Some(*b));
        b.claim("series.inversion", "printed series is the inverse of the printed dual polynomial", json!(to_i128(&inv)), json!(p.series), ok);
    }

    // the reduction algorithm against canonical normal forms
    if spec.series != Series::A && n.pow(3) <= opts.agreement_words {
        let oracle = NormalFormOracle::new(spec, &dual, 3)?;
        let printed_signs = exhaustive_agreement(spec, &oracle, 3, Signs::Printed)?;
        let corrected = exhaustive_agreement(spec, &oracle, 3, Signs::Corrected)?;
        b.claim(
            "algorithm.degree3",
            "the reduction algorithm brings every monomial to a signed reduced monomial",
            json!({ "printed_signs": printed_signs, "corrected_signs": corrected }),
            json!({ "agree": printed_signs.words }),
            printed_signs.all_agree(),
        );
    }

    let fields = json!({
        "algebra": alg.fields.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
        "dual": dual_h.fields.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
    });
    let count = |s: CheckStatus| b.checks.iter().filter(|c| c.status == s).count();
    let summary =
        Summary { pass: count(CheckStatus::Pass), mismatch: count(CheckStatus::Mismatch), unprinted: count(CheckStatus::Unprinted) };
    Ok(VerificationReport {
        spec: spec.to_string(),
        conventions: Conventions { pairing: opts.pairing, r_sign: opts.r_sign },
        fields,
        checks: b.checks,
        summary,
    })
}
