//! Degree-bounded Knuth-Bendix/Buchberger completion for homogeneous systems.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use super::{add_term, deglex_cmp, Poly, RewritingSystem, Word};
use crate::error::{Error, Result};
use crate::exactla::{Echelon, Rational, Rationals, SparseVec};

/// Largest `n^maxdeg` accepted.
const COMPLETION_WORDS: u128 = 1 << 24;

/// Resolves all overlaps of length `≤ maxdeg`, degree by degree, adding the
/// reduced differences as new rules. Normal words then form a basis in every
/// degree `≤ maxdeg`. A quadratic system whose degree-3 overlaps already
/// resolve is returned unchanged and marked confluent.
pub fn truncated_completion(rs: &RewritingSystem, maxdeg: usize) -> Result<RewritingSystem> {
    if maxdeg < 3 {
        return Err(Error::NotApplicable("completion needs maxdeg >= 3".into()));
    }
    if rs.rules.iter().any(|(l, r)| r.keys().any(|w| w.len() != l.len())) {
        return Err(Error::NotApplicable("completion needs homogeneous rules".into()));
    }
    if rs.complete_through.is_none() {
        return Ok(rs.clone());
    }
    let words = (rs.n() as u128).checked_pow(maxdeg as u32).unwrap_or(u128::MAX);
    if words > COMPLETION_WORDS {
        return Err(Error::Budget(format!("completion to degree {maxdeg} over {} letters", rs.n())));
    }
    let start = rs.complete_through.unwrap_or(2).max(2) + 1;
    let mut cur = rs.clone();
    for d in start..=maxdeg {
        let s_polys = overlap_differences(&cur, d);
        let mut rules = cur.rules.clone();
        rules.extend(interreduce(s_polys));
        cur = cur.with_rules(rules, Some(d));
    }
    if cur.is_quadratic() {
        cur.complete_through = None;
    }
    Ok(cur)
}

/// Reduced differences of the two rewrites of every overlap of length `d`.
fn overlap_differences(rs: &RewritingSystem, d: usize) -> Vec<Poly> {
    let leads: Vec<&Word> = rs.rules.keys().collect();
    let pairs: Vec<(usize, usize, usize)> = (0..leads.len())
        .flat_map(|i| (0..leads.len()).map(move |j| (i, j)))
        .flat_map(|(i, j)| {
            let (a, b) = (leads[i], leads[j]);
            (1..a.len().min(b.len()))
                .filter(move |&k| a.len() + b.len() - k == d && a[a.len() - k..] == b[..k])
                .map(move |k| (i, j, k))
        })
        .collect();
    pairs
        .par_iter()
        .filter_map(|&(i, j, k)| {
            let (a, b) = (leads[i], leads[j]);
            let tail = &b[k..];
            let head = &a[..a.len() - k];
            let mut diff = Poly::new();
            for (w, x) in &rs.rules[a] {
                let mut v = w.clone();
                v.extend_from_slice(tail);
                add_term(&mut diff, v, x);
            }
            for (w, x) in &rs.rules[b] {
                let mut v = head.to_vec();
                v.extend_from_slice(w);
                add_term(&mut diff, v, &-x);
            }
            let nf = rs.normal_form(&diff);
            (!nf.is_empty()).then_some(nf)
        })
        .collect()
}

/// Row-reduces homogeneous polynomials with the largest word as pivot and
/// turns each row into a rule.
fn interreduce(polys: Vec<Poly>) -> Vec<(Word, Poly)> {
    let mut words: BTreeSet<Word> = BTreeSet::new();
    for p in &polys {
        words.extend(p.keys().cloned());
    }
    // column 0 is the largest word
    let mut cols: Vec<Word> = words.into_iter().collect();
    cols.sort_by(|x, y| deglex_cmp(y, x));
    let pos: BTreeMap<&Word, usize> = cols.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut e = Echelon::new(Rationals, cols.len());
    for p in &polys {
        let mut v: SparseVec = p.iter().map(|(w, x)| (pos[w], x.clone())).collect();
        v.sort_by_key(|(c, _)| *c);
        e.insert(&v);
    }
    e.into_rref()
        .into_iter()
        .map(|row| {
            let lead = cols[row[0].0].clone();
            let rhs: Poly = row[1..].iter().map(|(c, x)| (cols[*c].clone(), -x)).collect();
            debug_assert!(row[0].1 == Rational::ONE);
            (lead, rhs)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::FieldTag;
    use crate::quadpres::{lambda_part, quad_kernel_presentation, QuadraticPresentation};
    use crate::rewrite::{MonomialOrder, OrderSpec};
    use crate::ydbraid::build_yd;

    fn u_of(spec: &str) -> QuadraticPresentation {
        lambda_part(&quad_kernel_presentation(&build_yd(&spec.parse().unwrap()))).unwrap()
    }

    fn system(p: &QuadraticPresentation, o: OrderSpec) -> RewritingSystem {
        RewritingSystem::build(p, &MonomialOrder::new(&o, p.generators()).unwrap()).unwrap()
    }

    #[test]
    fn confluent_input_unchanged() {
        let d = crate::rewrite::tests::dual_of("A:3");
        let mut rs = system(&d, OrderSpec::PaperD);
        assert!(rs.certify().unwrap().confluent);
        let c = truncated_completion(&rs, 4).unwrap();
        assert_eq!(c.rules(), rs.rules());
        assert_eq!(c.complete_through(), None);
        // not yet certified, but nothing to add
        let fresh = system(&d, OrderSpec::PaperD);
        let c = truncated_completion(&fresh, 4).unwrap();
        assert_eq!(c.rules(), fresh.rules());
        assert_eq!(c.complete_through(), None);
    }

    #[test]
    fn completed_counts_match_graded_dimension() {
        for (s, deg) in [("A:3", 5), ("D:3", 4), ("B:2", 5), ("A:4", 4)] {
            let u = u_of(s);
            let rs = system(&u, OrderSpec::default_for(&s.parse().unwrap()));
            let c = truncated_completion(&rs, deg).unwrap();
            let h = u.hilbert(deg, FieldTag::Rational).unwrap();
            for m in 0..=deg {
                let cnt = c.count_normal_words(m);
                assert!(cnt.exact);
                assert_eq!(cnt.value, h.dims[m], "{s} degree {m}");
            }
            assert_eq!(c.count_normal_words(deg + 1).exact, c.complete_through().is_none(), "{s}");
        }
    }

    #[test]
    fn completing_a_dual_in_a_bad_order() {
        let d = crate::rewrite::tests::dual_of("D:3");
        let o = OrderSpec::Custom(d.generators().iter().rev().copied().collect());
        let rs = system(&d, o);
        let c = truncated_completion(&rs, 4).unwrap();
        let h = d.hilbert(4, FieldTag::Rational).unwrap();
        for m in 0..=4 {
            assert_eq!(c.count_normal_words(m).value, h.dims[m]);
        }
    }

    #[test]
    fn refusals() {
        let u = u_of("A:3");
        let rs = system(&u, OrderSpec::PaperD);
        assert!(truncated_completion(&rs, 2).is_err());
        let big = u_of("B:4");
        let rs = system(&big, OrderSpec::PaperB);
        assert!(matches!(truncated_completion(&rs, 7), Err(Error::Budget(_))));
    }
}
