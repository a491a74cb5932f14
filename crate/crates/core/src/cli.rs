//! The `arrangelat` command line.
//!
//! Exit codes: 0 on success, 1 when an asserted identity fails, 2 for bad
//! input (unreadable files, malformed arrangements, bad flags).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arrangement::{Arrangement, Family};
use crate::corpus;
use crate::error::{Error, Result};
use crate::exactalg::Rationals;
use crate::fforacle::{self, DEFAULT_BUDGET, DEFAULT_PRIMES};
use crate::invariants;
use crate::lattice::{build_lattice, IntersectionLattice, MobiusTable};
use crate::perverse::{self, ReportFormat};

pub const BUDGET_ENV: &str = "ARRANGELAT_BUDGET";

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    Lattice,
    Mobius,
    Poincare,
    Charpoly,
    Length,
    Decompose,
    Triple,
    Verify,
    Hasse,
    Builtin,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Direct,
    Recursive,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Debug, Parser)]
#[command(
    name = "arrangelat",
    about = "Intersection lattices, Möbius invariants and perverse decomposition classes of hyperplane arrangements"
)]
pub struct Command {
    #[arg(value_enum)]
    pub verb: Verb,
    /// Arrangement JSON file.
    #[arg(long, conflicts_with = "family")]
    pub input: Option<PathBuf>,
    /// Built-in family: braid, boolean or generic.
    #[arg(long)]
    pub family: Option<String>,
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub pivot: Option<usize>,
    #[arg(long, value_enum, default_value = "both")]
    pub method: Method,
    /// Prime for the finite-field check; repeatable. Defaults to 101 and 103.
    #[arg(long)]
    pub prime: Vec<u64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Accepted by `builtin`, whose output is always the arrangement JSON.
    #[arg(long)]
    pub emit_json: bool,
    /// `verify` over the built-in fixed-seed corpus.
    #[arg(long, conflicts_with_all = ["input", "family"])]
    pub corpus: bool,
}

/// Result of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn failed(stdout: String, why: String) -> Self {
        Outcome { code: 1, stdout, stderr: why + "\n" }
    }

    fn input_error(why: impl std::fmt::Display) -> Self {
        Outcome { code: 2, stdout: String::new(), stderr: format!("error: {why}\n") }
    }
}

/// Runs the tool on arguments that exclude the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let argv = std::iter::once(OsString::from("arrangelat")).chain(args.into_iter().map(Into::into));
    let cmd = match Command::try_parse_from(argv) {
        Ok(cmd) => cmd,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let budget = match std::env::var(BUDGET_ENV) {
        Ok(v) => match v.trim().parse::<u64>() {
            Ok(b) => b,
            Err(_) => return Outcome::input_error(format!("{BUDGET_ENV} must be an integer, got {v:?}")),
        },
        Err(_) => DEFAULT_BUDGET,
    };
    let mut outcome = match execute(&cmd, budget) {
        Ok(o) => o,
        Err(Error::IdentityViolated(why)) => Outcome::failed(String::new(), format!("error: {why}")),
        Err(e) => Outcome::input_error(e),
    };
    if let Some(path) = &cmd.output {
        if outcome.code != 2 {
            if let Err(e) = std::fs::write(path, &outcome.stdout) {
                return Outcome::input_error(format!("cannot write {}: {e}", path.display()));
            }
            outcome.stdout.clear();
        }
    }
    outcome
}

fn load_arrangement(cmd: &Command) -> Result<Arrangement> {
    match (&cmd.input, &cmd.family) {
        (Some(path), None) => {
            let bytes = std::fs::read(path).map_err(|e| {
                Error::InvalidParams(format!("cannot read {}: {e}", path.display()))
            })?;
            Arrangement::parse(&bytes)
        }
        (None, Some(name)) => Arrangement::builtin(Family::from_name(name, cmd.n, cmd.m)?),
        _ => Err(Error::InvalidParams("exactly one of --input or --family is required".into())),
    }
}

fn pick_format(cmd: &Command, default: Format, allowed: &[Format]) -> Result<Format> {
    let f = cmd.format.unwrap_or(default);
    if !allowed.contains(&f) {
        return Err(Error::UnknownFormat(format!(
            "{} for verb {}",
            f.to_possible_value().expect("no skipped variants").get_name(),
            cmd.verb.to_possible_value().expect("no skipped variants").get_name()
        )));
    }
    Ok(f)
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json values serialize") + "\n"
}

fn execute(cmd: &Command, budget: u64) -> Result<Outcome> {
    use Format::*;
    if cmd.verb == Verb::Verify && cmd.corpus {
        return verify_corpus(cmd, budget);
    }
    let a = load_arrangement(cmd)?;
    match cmd.verb {
        Verb::Builtin => {
            pick_format(cmd, Json, &[Json])?;
            Ok(Outcome::ok(a.serialize() + "\n"))
        }
        Verb::Lattice | Verb::Mobius => {
            let l = build_lattice(&a);
            let mu = l.mobius();
            match pick_format(cmd, Json, &[Json, Text, Dot])? {
                Json => Ok(Outcome::ok(pretty(&l.to_json(&mu)))),
                Text => {
                    let mut out = String::new();
                    for (i, f) in l.flats().iter().enumerate() {
                        writeln!(out, "F{i} dim={} mu={}", f.dim(), mu.get(i)).unwrap();
                    }
                    Ok(Outcome::ok(out))
                }
                Dot => Ok(Outcome::ok(emit_hasse_dot(&l, &mu))),
            }
        }
        Verb::Hasse => {
            pick_format(cmd, Dot, &[Dot])?;
            let l = build_lattice(&a);
            Ok(Outcome::ok(emit_hasse_dot(&l, &l.mobius())))
        }
        Verb::Poincare | Verb::Charpoly => {
            let p = if cmd.verb == Verb::Poincare {
                invariants::poincare_polynomial(&a)
            } else {
                invariants::characteristic_polynomial(&a)
            };
            match pick_format(cmd, Json, &[Json, Text])? {
                Json => Ok(Outcome::ok(serde_json::to_string(&p.to_json()).expect("json") + "\n")),
                _ => Ok(Outcome::ok(format!("{p}\n"))),
            }
        }
        Verb::Length => {
            let len = invariants::length(&a)?;
            match pick_format(cmd, Text, &[Json, Text])? {
                Json => Ok(Outcome::ok(format!("\"{len}\"\n"))),
                _ => Ok(Outcome::ok(format!("{len}\n"))),
            }
        }
        Verb::Decompose => decompose(cmd, &a),
        Verb::Triple => triple(cmd, &a),
        Verb::Verify => verify_one(cmd, &a, budget),
    }
}

fn decompose(cmd: &Command, a: &Arrangement) -> Result<Outcome> {
    let format = match pick_format(cmd, Format::Json, &[Format::Json, Format::Text])? {
        Format::Json => ReportFormat::Json,
        _ => ReportFormat::Text,
    };
    let class = match cmd.method {
        Method::Direct => perverse::decompose_direct(a),
        Method::Recursive => perverse::decompose_recursive(a),
        Method::Both => {
            let direct = perverse::decompose_direct(a);
            let recursive = perverse::decompose_recursive(a);
            if direct != recursive {
                let body = perverse::report_for_class(a, &direct, format)?;
                return Ok(Outcome::failed(
                    body,
                    "error: direct and recursive decompositions disagree".into(),
                ));
            }
            direct
        }
    };
    Ok(Outcome::ok(perverse::report_for_class(a, &class, format)?))
}

fn triple(cmd: &Command, a: &Arrangement) -> Result<Outcome> {
    pick_format(cmd, Format::Json, &[Format::Json])?;
    let pivot = cmd.pivot.unwrap_or(0);
    let t = invariants::check_triple_identity(a, pivot)?;
    let m = invariants::check_mobius_additivity(a, pivot)?;
    let holds = t.holds && m.holds;
    let body = pretty(&json!({
        "pivot": pivot,
        "deletion_restriction": t.to_json(),
        "mobius_additivity": m.to_json(),
        "holds": holds,
    }));
    Ok(if holds {
        Outcome::ok(body)
    } else {
        Outcome::failed(body, format!("error: deletion-restriction identities fail at pivot {pivot}"))
    })
}

fn primes(cmd: &Command) -> Vec<u64> {
    if cmd.prime.is_empty() {
        DEFAULT_PRIMES.to_vec()
    } else {
        cmd.prime.clone()
    }
}

fn verify_one(cmd: &Command, a: &Arrangement, budget: u64) -> Result<Outcome> {
    pick_format(cmd, Format::Json, &[Format::Json])?;
    let results = primes(cmd)
        .into_iter()
        .map(|p| fforacle::oracle_check(a, p, budget))
        .collect::<Result<Vec<_>>>()?;
    let body = pretty(&Value::Array(results.iter().map(|r| r.to_json()).collect()));
    if results.iter().any(|r| r.good_prime && !r.pass) {
        return Ok(Outcome::failed(body, "error: point count differs from χ(A,p)".into()));
    }
    if !results.iter().any(|r| r.good_prime) {
        return Ok(Outcome {
            code: 2,
            stdout: body,
            stderr: "error: no good prime among those given; try another --prime\n".into(),
        });
    }
    Ok(Outcome::ok(body))
}

/// Every identity check on one corpus instance.
fn corpus_checks(seed: u64, a: &Arrangement, primes: &[u64], budget: u64) -> Result<Value> {
    let mut ok = true;
    let mut triple_ok = true;
    let mut additivity_ok = true;
    for pivot in 0..a.len() {
        triple_ok &= invariants::check_triple_identity(a, pivot)?.holds;
        additivity_ok &= invariants::check_mobius_additivity(a, pivot)?.holds;
    }
    let agree = perverse::decompose_direct(a) == perverse::decompose_recursive(a);
    ok &= triple_ok && additivity_ok && agree;
    let mut oracle = Vec::new();
    for &p in primes {
        if num_bigint::BigUint::from(p).pow(a.ambient_dim() as u32) > budget.into() {
            continue;
        }
        let r = fforacle::oracle_check(a, p, budget)?;
        ok &= !r.good_prime || r.pass;
        oracle.push(r.to_json());
    }
    Ok(json!({
        "seed": seed,
        "ambient_dim": a.ambient_dim(),
        "hyperplanes": a.len(),
        "length": invariants::length(a)?.to_string(),
        "deletion_restriction": triple_ok,
        "mobius_additivity": additivity_ok,
        "algorithms_agree": agree,
        "oracle": oracle,
        "pass": ok,
    }))
}

fn verify_corpus(cmd: &Command, budget: u64) -> Result<Outcome> {
    pick_format(cmd, Format::Json, &[Format::Json])?;
    let primes = primes(cmd);
    let rows = corpus::corpus()
        .par_iter()
        .map(|(seed, a)| corpus_checks(*seed, a, &primes, budget))
        .collect::<Result<Vec<_>>>()?;
    let failed: Vec<u64> = rows
        .iter()
        .filter(|r| r["pass"] != json!(true))
        .map(|r| r["seed"].as_u64().expect("seed"))
        .collect();
    let body = pretty(&Value::Array(rows));
    Ok(if failed.is_empty() {
        Outcome::ok(body)
    } else {
        Outcome::failed(body, format!("error: corpus seeds failing: {failed:?}"))
    })
}

/// Hasse diagram as a DOT digraph: one node per flat in canonical order and
/// one edge per cover relation, drawn bottom to top.
pub fn emit_hasse_dot(l: &IntersectionLattice<Rationals>, mu: &MobiusTable) -> String {
    let mut out = String::from("digraph intersection_lattice {\n  rankdir=BT;\n  node [shape=box];\n");
    for (i, f) in l.flats().iter().enumerate() {
        writeln!(out, "  {i} [label=\"F{i} dim={} mu={}\"];", f.dim(), mu.get(i)).unwrap();
    }
    for (a, b) in l.covers() {
        writeln!(out, "  {a} -> {b};").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrangement::Family;

    #[test]
    fn hasse_examples() {
        let l = build_lattice(&Arrangement::empty(3));
        let dot = emit_hasse_dot(&l, &l.mobius());
        assert!(dot.contains("0 [label=\"F0 dim=3 mu=1\"];"));
        assert!(!dot.contains("->"));

        let l = build_lattice(&Arrangement::builtin(Family::Boolean { n: 2 }).unwrap());
        let dot = emit_hasse_dot(&l, &l.mobius());
        assert_eq!(dot.matches("label=").count(), 4);
        assert_eq!(dot.matches("->").count(), 4);

        let l = build_lattice(&Arrangement::builtin(Family::Braid { n: 3 }).unwrap());
        let dot = emit_hasse_dot(&l, &l.mobius());
        assert_eq!(dot.matches("label=").count(), 5);
        assert_eq!(dot.matches("->").count(), 6);
        assert!(dot.contains("F4 dim=1 mu=2"));
        assert_eq!(dot, emit_hasse_dot(&l, &l.mobius()));
    }

    #[test]
    fn length_of_braid_four() {
        let o = run(["length", "--family", "braid", "--n", "4"]);
        assert_eq!((o.code, o.stdout.as_str()), (0, "24\n"));
    }

    #[test]
    fn bad_inputs_exit_two() {
        assert_eq!(run(["poincare", "--input", "missing.json"]).code, 2);
        assert_eq!(run(["poincare"]).code, 2);
        assert_eq!(run(["frobnicate", "--family", "braid", "--n", "3"]).code, 2);
        assert_eq!(run(["poincare", "--family", "braid", "--n", "3", "--input", "x"]).code, 2);
        assert_eq!(run(["hasse", "--family", "braid", "--n", "3", "--format", "json"]).code, 2);
        assert_eq!(run(["triple", "--family", "braid", "--n", "3", "--pivot", "9"]).code, 2);
    }
}
