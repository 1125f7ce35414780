//! Acceptance suite: one PASS/FAIL line per criterion. All comparisons are
//! exact (tolerance 0); time limits are wall clock.
//!
//! Criteria 3 and 8 check printed material that does not hold (two triangle
//! relations, and a case analysis that cannot reach every degree-3 basis
//! element). They run in full and may fail without failing the target.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use ybkoszul::beerkit::{
    algorithm_reduce, build_beer, paper_relations, printed_dual_polynomial, printed_series,
    AgreementTally, NormalFormOracle, RelationList,
};
use ybkoszul::exactla::{FieldTag, PairingConvention, Rational};
use ybkoszul::quadpres::relation_list_check;
use ybkoszul::morphcheck::{check_map, MapKind};
use ybkoszul::reflgroups::{enumerate_reflections, GroupSpec, Series};
use ybkoszul::rewrite::{koszul_product, series_inverse_int, truncated_completion, MonomialOrder, OrderSpec, RewritingSystem};
use ybkoszul::ydbraid::{build_yd, check_braid_relation, check_yd_condition};

type Outcome = Result<(bool, String), String>;
/// `(id, name, time limit, check)`.
type Criterion = (usize, &'static str, Duration, fn() -> Outcome);

/// Criteria allowed to fail.
const KNOWN_UNATTAINABLE: [usize; 2] = [3, 8];

fn spec(s: &str) -> GroupSpec {
    s.parse().expect("valid spec")
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn c1() -> Outcome {
    let want = [("A:3", 3), ("A:4", 6), ("D:4", 12), ("B:4", 16)];
    let got: Vec<usize> = want.iter().map(|(s, _)| enumerate_reflections(&spec(s)).len()).collect();
    let ok = want.iter().zip(&got).all(|((_, w), g)| w == g);
    Ok((ok, format!("counts {got:?}")))
}

fn c2() -> Outcome {
    let mut bad = Vec::new();
    for s in ["A:3", "A:4", "D:3", "D:4", "B:2", "B:3"] {
        let y = build_yd(&spec(s));
        if !check_braid_relation(&y) || !check_yd_condition(&y) {
            bad.push(s);
        }
    }
    Ok((bad.is_empty(), format!("failing {bad:?}")))
}

fn c3() -> Outcome {
    let mut failing = Vec::new();
    let mut verdicts = Vec::new();
    for series in [Series::A, Series::B, Series::D] {
        for n in 2..=4 {
            let g = GroupSpec::new(series, n).map_err(err)?;
            let b = build_beer(&g).map_err(err)?;
            for list in RelationList::ALL.iter().filter(|l| !l.is_dual() && l.applies_to(series)) {
                let rels = paper_relations(&g, *list).map_err(err)?;
                if rels.is_empty() {
                    continue;
                }
                let target = if list.is_antisymmetric() { &b.algebra } else { &b.cover };
                let chk = relation_list_check(&b.space, target, &rels).map_err(err)?;
                for (r, ok) in rels.iter().zip(&chk.contained) {
                    if !ok {
                        failing.push(format!("{g} {}", r.name));
                    }
                }
                verdicts.push(format!("{g} {list}: {}/{} span_equal={}", chk.independent, chk.dim_r, chk.span_equal));
            }
        }
    }
    println!("  span verdicts: {}", verdicts.join("; "));
    Ok((failing.is_empty(), format!("{} instances outside the kernel: {}", failing.len(), failing.join(", "))))
}

fn c4() -> Outcome {
    let mut bad = Vec::new();
    let mut n = 0;
    let groups = (2..=5).map(|k| (Series::A, k)).chain((1..=4).map(|k| (Series::B, k))).chain((2..=4).map(|k| (Series::D, k)));
    for (s, k) in groups {
        let g = GroupSpec::new(s, k).map_err(err)?;
        let b = build_beer(&g).map_err(err)?;
        let r = b.algebra.relations().dim() as u128;
        for c in PairingConvention::ALL {
            n += 1;
            let d2 = b.dual_for(c).graded_dimension(2, FieldTag::Rational).map_err(err)?;
            if d2 != r {
                bad.push(format!("{g} {c}: {d2} vs {r}"));
            }
        }
    }
    Ok((bad.is_empty(), format!("{n} presentations, mismatches {bad:?}")))
}

fn c5() -> Outcome {
    let mut msg = Vec::new();
    let mut ok = true;
    for s in ["D:4", "B:4"] {
        let g = spec(s);
        let p = printed_dual_polynomial(&g).ok_or("no printed polynomial")?;
        let want: Vec<Rational> = printed_series(&g).ok_or("no printed series")?.into_iter().map(Rational::from_int128).collect();
        let got = series_inverse_int(&p, want.len() - 1).map_err(err)?;
        ok &= got == want;
        msg.push(format!("{s} {}", got.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")));
    }
    Ok((ok, msg.join("; ")))
}

fn c6() -> Outcome {
    let mut ok = true;
    let mut msg = Vec::new();
    for s in ["A:3", "A:4", "D:3", "D:4", "B:2", "B:3"] {
        let g = spec(s);
        let b = build_beer(&g).map_err(err)?;
        let dual = b.dual();
        let dims = dual.hilbert(4, FieldTag::Rational).map_err(err)?.dims;
        let order = MonomialOrder::new(&OrderSpec::default_for(&g), dual.generators()).map_err(err)?;
        let mut rs = RewritingSystem::build(dual, &order).map_err(err)?;
        let confluent = rs.certify().map_err(err)?.confluent;
        // completed system as a second count, through degree 4
        let done = truncated_completion(&rs, 4).map_err(err)?;
        let counts: Vec<u128> = (0..=4).map(|m| done.count_normal_words(m).value).collect();
        ok &= counts == dims;
        msg.push(format!("{s} completed {counts:?}"));
        if confluent {
            let direct: Vec<u128> = (0..=4).map(|m| rs.count_normal_words(m).value).collect();
            ok &= direct == dims;
            msg.push(format!("{s} confluent {direct:?}"));
        }
        // lex order is confluent for some duals the default order is not
        let lex = MonomialOrder::new(&OrderSpec::Lex, dual.generators()).map_err(err)?;
        let mut lrs = RewritingSystem::build(dual, &lex).map_err(err)?;
        if lrs.certify().map_err(err)?.confluent {
            let direct: Vec<u128> = (0..=4).map(|m| lrs.count_normal_words(m).value).collect();
            ok &= direct == dims;
            msg.push(format!("{s} lex-confluent {direct:?}"));
        }
    }
    Ok((ok, msg.join("; ")))
}

fn c7() -> Outcome {
    let mut ok = true;
    let mut msg = Vec::new();
    for s in ["A:3", "D:3", "B:2"] {
        let b = build_beer(&spec(s)).map_err(err)?;
        let to_q = |d: Vec<u128>| d.into_iter().map(|x| Rational::from_int128(x as i128)).collect::<Vec<_>>();
        let p = to_q(b.algebra.hilbert(4, FieldTag::Rational).map_err(err)?.dims);
        let pd = to_q(b.dual().hilbert(4, FieldTag::Rational).map_err(err)?.dims);
        let k = koszul_product(&p, &pd, 4);
        ok &= k[0] == Rational::ONE && k[1..=4].iter().all(Rational::is_zero);
        msg.push(format!("{s} {}", k.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")));
    }
    Ok((ok, msg.join("; ")))
}

fn c8() -> Outcome {
    let g = spec("D:4");
    let b = build_beer(&g).map_err(err)?;
    let oracle = NormalFormOracle::new(&g, b.dual(), 4).map_err(err)?;
    let labels = b.dual().generators().to_vec();
    let mut deg3 = AgreementTally::default();
    for x in &labels {
        for y in &labels {
            for z in &labels {
                let w = [*x, *y, *z];
                let red = algorithm_reduce(&g, &w).map_err(err)?;
                deg3.add(oracle.check(&w, &red).map_err(err)?);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut deg4 = AgreementTally::default();
    for _ in 0..1000 {
        let w: Vec<_> = (0..4).map(|_| labels[rng.random_range(0..labels.len())]).collect();
        let red = algorithm_reduce(&g, &w).map_err(err)?;
        deg4.add(oracle.check(&w, &red).map_err(err)?);
    }
    let ok = deg3.words == 1728 && deg3.all_agree() && deg4.words == 1000 && deg4.all_agree();
    Ok((ok, format!("degree 3 {deg3:?}; degree 4 {deg4:?}")))
}

fn c9() -> Outcome {
    let mut kinds = vec![MapKind::AtoD(3), MapKind::AtoD(4), MapKind::AtoB(3), MapKind::AtoB(4)];
    for s in [Series::A, Series::B, Series::D] {
        kinds.extend([MapKind::RankStep(s, 2), MapKind::RankStep(s, 3)]);
    }
    let mut bad = Vec::new();
    for k in &kinds {
        let c = check_map(*k).map_err(err)?;
        if !(c.relations_preserved && c.perfect_degree2) {
            bad.push(k.to_string());
        }
    }
    Ok((bad.is_empty(), format!("{} maps, failing {bad:?}", kinds.len())))
}

fn c10() -> Outcome {
    let b = build_beer(&spec("B:1")).map_err(err)?;
    let dims = b.algebra.hilbert(10, FieldTag::Rational).map_err(err)?.dims;
    let dual = b.dual().hilbert(4, FieldTag::Rational).map_err(err)?.trimmed();
    Ok((dims == vec![1; 11] && dual == vec![1, 1], format!("dims {dims:?}, dual {dual:?}")))
}

fn verify_json(group: &str) -> Result<(String, i32), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_ybkoszul"))
        .args(["verify", "--group", group, "--rank", "4"])
        .output()
        .map_err(err)?;
    Ok((String::from_utf8(out.stdout).map_err(err)?, out.status.code().unwrap_or(-1)))
}

fn c11() -> Outcome {
    let mut problems = Vec::new();
    let mut msg = Vec::new();
    for (group, dual_deg) in [("D", 3), ("B", 3)] {
        let (text, code) = verify_json(group)?;
        let (again, _) = verify_json(group)?;
        if text != again {
            problems.push(format!("{group}4 report not deterministic"));
        }
        if code != 0 && code != 1 {
            problems.push(format!("{group}4 exit {code}"));
        }
        let rep: Value = serde_json::from_str(&text).map_err(err)?;
        let find = |id: &str| rep["checks"].as_array().and_then(|cs| cs.iter().find(|c| c["id"] == id)).cloned();
        let mut ids: Vec<String> = (0..=dual_deg).map(|m| format!("dual.dim.{m}")).collect();
        ids.extend((0..=5).map(|m| format!("algebra.dim.{m}")));
        ids.push("series.inversion".into());
        if group == "D" {
            ids.push("dual.total".into());
        }
        for id in &ids {
            match find(id) {
                Some(c) if !c["computed"].is_null() && !c["printed"].is_null() && c["status"].is_string() => {}
                _ => problems.push(format!("{group}4 {id} missing or incomplete")),
            }
        }
        // computed values consistent among themselves
        for id in ["duality.degree2", "koszul.criterion", "series.inversion"] {
            if find(id).map(|c| c["status"] != "PASS").unwrap_or(true) {
                problems.push(format!("{group}4 {id} not PASS"));
            }
        }
        msg.push(format!("{group}4 {}", rep["summary"]));
    }
    Ok((problems.is_empty(), format!("{}; {problems:?}", msg.join("; "))))
}

fn main() {
    let criteria: [Criterion; 11] = [
        (1, "reflection counts", Duration::from_secs(1), c1),
        (2, "braid equation and YD compatibility", Duration::from_secs(30), c2),
        (3, "printed relations in the kernel", Duration::from_secs(120), c3),
        (4, "dim of dual degree 2 = dim R", Duration::from_secs(120), c4),
        (5, "series inversion of printed polynomials", Duration::from_secs(1), c5),
        (6, "normal words = graded dimension", Duration::from_secs(300), c6),
        (7, "Koszul numerical criterion", Duration::from_secs(300), c7),
        (8, "reduction algorithm = normal form", Duration::from_secs(120), c8),
        (9, "morphism suite", Duration::from_secs(120), c9),
        (10, "C2 regression", Duration::from_secs(1), c10),
        (11, "D4 and B4 verification reports", Duration::from_secs(600), c11),
    ];
    let mut unexpected = Vec::new();
    for (id, name, limit, f) in criteria {
        let t = Instant::now();
        let res = f();
        let dt = t.elapsed();
        let (ok, detail) = match res {
            Ok((ok, d)) => (ok && dt <= limit, d),
            Err(e) => (false, format!("error: {e}")),
        };
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("{verdict} {id:>2} {name} [tol 0, {:.2}s/{}s] {detail}", dt.as_secs_f64(), limit.as_secs());
        if !ok && !KNOWN_UNATTAINABLE.contains(&id) {
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        println!("acceptance: no failures outside {KNOWN_UNATTAINABLE:?}");
    } else {
        println!("acceptance: unexpected failures {unexpected:?}");
        std::process::exit(1);
    }
}
