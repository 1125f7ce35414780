//! `ybkoszul`: builds the algebras, their duals and the verification report,
//! printing JSON on stdout and a short summary on stderr.
//!
//! Exit codes: 0 all checks pass, 1 a mismatch against printed data,
//! 2 an internal invariant violated, 3 invalid input.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use ybkoszul::beerkit::{
    algorithm_reduce_with, build_beer_with, printed_dual_polynomial, verification_report, Agreement,
    NormalFormOracle, Reduction, ReportOptions, Signs,
};
use ybkoszul::exactla::{FieldTag, PairingConvention, Rational};
use ybkoszul::morphcheck::{check_map, MapKind};
use ybkoszul::reflgroups::{enumerate_reflections, GroupSpec, Label, Series};
use ybkoszul::rewrite::{format_poly, series_inverse_int, MonomialOrder, OrderSpec, RewritingSystem};
use ybkoszul::ydbraid::RLabelSign;
use ybkoszul::{Error, Result};

#[derive(Parser, Debug)]
#[command(name = "ybkoszul", version, about = "Quadratic algebras of the A, B and D reflection groups and their duals")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Series: A, B or D.
    #[arg(long, global = true)]
    group: Option<Series>,
    #[arg(long, global = true)]
    rank: Option<usize>,
    /// Degree bound.
    #[arg(long, global = true, default_value_t = 4)]
    degree: usize,
    /// paperD, paperB, lex or custom:l1,l2,...
    #[arg(long, global = true)]
    order: Option<OrderSpec>,
    #[arg(long, global = true, default_value = "straight")]
    pairing: PairingConvention,
    /// rational or prime:p
    #[arg(long, global = true, default_value = "rational")]
    field: FieldTag,
    /// Sign of the r labels in the action.
    #[arg(long, global = true, default_value = "plus")]
    r_sign: RLabelSign,
    /// Also write the JSON here.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generators and relations of U(yb).
    Present,
    /// The braided cover ker(Id+Psi) and its antisymmetric part.
    Kernel,
    /// The quadratic dual and its graded dimensions.
    Dual,
    /// Graded dimensions of U(yb).
    Hilbert {
        /// Invert a dual Hilbert polynomial instead of counting.
        #[arg(long)]
        from_dual: bool,
        /// Comma-separated coefficients, or `printed`. Defaults to the computed dual.
        #[arg(long, requires = "from_dual")]
        dual_poly: Option<String>,
    },
    /// Overlap check of the dual's rewriting system.
    Pbw,
    /// Reduce a dual monomial by the case analysis and by rewriting.
    Reduce {
        /// Labels separated by spaces, e.g. "u(1,2) uu(2,3)".
        #[arg(long)]
        word: String,
        /// printed or corrected
        #[arg(long, default_value = "printed")]
        signs: String,
    },
    /// Check a generator map: AtoD:n, AtoB:n or step:S:n.
    Morphism {
        #[arg(long)]
        kind: MapKind,
    },
    /// The verification report against the printed data.
    Verify,
}

/// JSON payload, a one-line summary and whether every check passed.
struct Outcome {
    json: Value,
    summary: String,
    ok: bool,
}

impl Outcome {
    fn info(json: Value, summary: String) -> Self {
        Outcome { json, summary, ok: true }
    }
}

fn spec_of(cli: &Cli) -> Result<GroupSpec> {
    match (cli.group, cli.rank) {
        (Some(s), Some(n)) => GroupSpec::new(s, n),
        _ => Err(Error::Parse("--group and --rank are required".into())),
    }
}

fn labels(ls: &[Label]) -> Vec<String> {
    ls.iter().map(|l| l.to_string()).collect()
}

fn parse_word(spec: &GroupSpec, s: &str) -> Result<Vec<Label>> {
    let w = s.split_whitespace().map(|t| t.parse::<Label>()).collect::<Result<Vec<_>>>()?;
    if w.is_empty() {
        return Err(Error::Parse("empty word".into()));
    }
    match w.iter().find(|l| !l.valid_for(spec)) {
        Some(l) => Err(Error::UnknownLabel(format!("{l} is not a generator for {spec}"))),
        None => Ok(w),
    }
}

fn parse_poly(s: &str) -> Result<Vec<i128>> {
    s.split(',')
        .map(|x| x.trim().parse::<i128>().map_err(|_| Error::Parse(format!("bad coefficient {x:?}"))))
        .collect()
}

fn run(cli: &Cli) -> Result<Outcome> {
    if let Command::Morphism { kind } = &cli.command {
        let c = check_map(*kind)?;
        let summary = format!(
            "{kind}: preserved {} perfect {} ({} = {})",
            c.relations_preserved, c.perfect_degree2, c.source_relations, c.restricted_target_relations
        );
        let ok = c.passed();
        return Ok(Outcome { json: serde_json::to_value(&c).expect("serializable"), summary, ok });
    }
    let spec = spec_of(cli)?;
    let beer = build_beer_with(&spec, cli.r_sign)?;
    let dual = beer.dual_for(cli.pairing);
    let order_spec = cli.order.clone().unwrap_or_else(|| OrderSpec::default_for(&spec));
    Ok(match &cli.command {
        Command::Present => {
            let r = beer.algebra.relations().dim();
            Outcome::info(
                json!({
                    "spec": spec.to_string(),
                    "reflections": enumerate_reflections(&spec).len(),
                    "presentation": beer.algebra.to_json(),
                    "dim_relations": r,
                }),
                format!("{spec}: {} generators, {r} relations", beer.algebra.n()),
            )
        }
        Command::Kernel => {
            let (k, r) = (beer.cover.relations().dim(), beer.algebra.relations().dim());
            Outcome::info(
                json!({
                    "spec": spec.to_string(),
                    "kernel": beer.cover.to_json(),
                    "dim_kernel": k,
                    "dim_lambda": r,
                }),
                format!("{spec}: dim ker(Id+Psi) = {k}, antisymmetric part {r}"),
            )
        }
        Command::Dual => {
            let h = dual.hilbert(cli.degree, cli.field)?;
            let dims = h.trimmed();
            Outcome::info(
                json!({
                    "spec": spec.to_string(),
                    "pairing": cli.pairing,
                    "dual": dual.to_json(),
                    "dims": h.dims,
                    "fields": h.fields,
                }),
                format!("{spec}: dual dims {dims:?}"),
            )
        }
        Command::Hilbert { from_dual: false, .. } => {
            let h = beer.algebra.hilbert(cli.degree, cli.field)?;
            Outcome::info(
                json!({"spec": spec.to_string(), "source": "algebra", "series": h.dims, "fields": h.fields}),
                format!("{spec}: dims {:?}", h.dims),
            )
        }
        Command::Hilbert { from_dual: true, dual_poly } => {
            let poly = match dual_poly.as_deref() {
                Some("printed") => printed_dual_polynomial(&spec)
                    .ok_or_else(|| Error::NotApplicable(format!("no printed dual polynomial for {spec}")))?,
                Some(s) => parse_poly(s)?,
                None => {
                    let top = spec_top(&spec, cli.degree);
                    dual.hilbert(top, cli.field)?.trimmed().iter().map(|&x| x as i128).collect()
                }
            };
            // P(t) = 1/P^!(-t)
            let series = series_inverse_int(&poly, cli.degree)?;
            let integral = series.iter().all(Rational::is_integer);
            Outcome::info(
                json!({
                    "spec": spec.to_string(),
                    "source": "dual-inversion",
                    "dual_polynomial": poly,
                    "series": series,
                    "integral": integral,
                }),
                format!("{spec}: series {}", series.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")),
            )
        }
        Command::Pbw => {
            let order = MonomialOrder::new(&order_spec, dual.generators())?;
            let rs = RewritingSystem::build(dual, &order)?;
            let rep = rs.pbw_confluent()?;
            let t: Vec<[String; 2]> = rs.t_set().iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect();
            let failing: Vec<String> = rep.failing.iter().map(|w| labels(w).join(" ")).collect();
            Outcome::info(
                json!({
                    "spec": spec.to_string(),
                    "order": order_spec.to_string(),
                    "confluent": rep.confluent,
                    "overlaps_checked": rep.overlaps_checked,
                    "t_set": t,
                    "failing_overlaps": failing,
                }),
                format!("{spec} {order_spec}: confluent {} ({} bad overlaps)", rep.confluent, failing.len()),
            )
        }
        Command::Reduce { word, signs } => {
            let signs = match signs.as_str() {
                "printed" => Signs::Printed,
                "corrected" => Signs::Corrected,
                other => return Err(Error::Parse(format!("signs must be printed or corrected, not {other:?}"))),
            };
            let w = parse_word(&spec, word)?;
            let red = algorithm_reduce_with(&spec, &w, signs)?;
            let oracle = NormalFormOracle::new(&spec, dual, w.len())?;
            let nf = oracle.normal_form(&w)?;
            let agreement = oracle.check(&w, &red)?;
            let (sign, reduced) = match red.signed_word() {
                Some((s, r)) => (s, Value::from(labels(&r).join(" "))),
                None => (0, Value::Null),
            };
            let shape = match &red {
                Reduction::Reduced { monomial, .. } => serde_json::to_value(monomial).expect("serializable"),
                _ => Value::Null,
            };
            let agree = agreement == Agreement::Agree;
            Outcome {
                json: json!({
                    "input": labels(&w).join(" "),
                    "reduced": reduced,
                    "sign": sign,
                    "zero": red.is_zero(),
                    "stuck": matches!(red, Reduction::Stuck { .. }),
                    "blocks": shape,
                    "normal_form": format_poly(oracle.system().labels(), &nf),
                    "agreement": agree,
                }),
                summary: format!("{}: {:?}", labels(&w).join(" "), agreement),
                ok: agree,
            }
        }
        Command::Verify => {
            let opts = ReportOptions { maxdeg: cli.degree, field: cli.field, pairing: cli.pairing, r_sign: cli.r_sign, ..Default::default() };
            let rep = verification_report(&spec, &opts)?;
            let s = &rep.summary;
            let summary = format!("{spec}: {} pass, {} mismatch, {} unprinted", s.pass, s.mismatch, s.unprinted);
            let ok = s.mismatch == 0;
            Outcome { json: rep.to_json(), summary, ok }
        }
        Command::Morphism { .. } => unreachable!("handled above"),
    })
}

/// Degree bound for the dual: it vanishes past rank+1 in every case built here.
fn spec_top(spec: &GroupSpec, degree: usize) -> usize {
    degree.max((spec.rank + 1).min(5))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.json).expect("serializable");
            println!("{text}");
            eprintln!("{}", out.summary);
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, format!("{text}\n")) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(3);
                }
            }
            ExitCode::from(if out.ok { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { 3 } else { 2 })
        }
    }
}
