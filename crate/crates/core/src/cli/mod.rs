//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on parse or validation errors (including
//! failed law checks), 2 when an enumeration exceeds the budget.

mod dot;
mod spacefile;

use std::ffi::OsString;
use std::path::Path;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::monad::{check_monad_laws, MonadKind, MonadSpec};
use crate::reflect::{reflect, space_report, ReflectorKind};
use crate::tspace::{barr_extend, product_space, TSpace};

pub use dot::emit_dot;
pub use spacefile::{
    elem_from_json, elem_to_json, index_to_json, nested_index_to_json, parse_monad_desc,
    parse_space_file, parse_space_file_with_budget, serialize_space, MonadDesc, MonoidDesc,
    SpaceFile,
};

#[derive(Parser, Debug)]
#[command(name = "tspaces", version, about = "Finite T-spaces: checks, reflections, extensions")]
struct Cli {
    /// machine-readable output
    #[arg(long, global = true)]
    json: bool,
    /// cap on enumerated T- and TT-carriers
    #[arg(long, global = true, value_name = "N")]
    budget: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Report the conditions R, T, K, H, A, C, F
    Check { file: String },
    /// Reflect into algebras (B), H-, C-, F- or CF-spaces
    Reflect {
        #[arg(long, value_parser = ["B", "H", "C", "F", "CF"])]
        into: String,
        file: String,
    },
    /// Print the extended relation on TTX x TX
    Extend { file: String },
    /// Print the product of two spaces
    Product { left: String, right: String },
    /// Check the monad laws; SPEC is a kind name, inline JSON or a file
    Laws {
        #[arg(long, value_name = "SPEC")]
        monad: String,
        #[arg(long, default_value_t = 3)]
        max_n: usize,
    },
    /// Graphviz rendering
    Dot { file: String },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => 2,
        _ => 1,
    }
}

fn read(path: &str) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Invalid(format!("cannot read {path}: {e}")))
}

fn load(path: &str, budget: Option<usize>) -> Result<TSpace> {
    parse_space_file_with_budget(&read(path)?, budget)
}

fn monad_from_arg(spec: &str, budget: Option<usize>) -> Result<MonadSpec> {
    let trimmed = spec.trim_start();
    if trimmed.starts_with('{') {
        return parse_monad_desc(spec, budget);
    }
    if let Some(kind) = MonadKind::parse(spec) {
        if kind == MonadKind::MonoidAction {
            return Err(Error::invalid("monoid_action needs a JSON descriptor with a monoid table"));
        }
        let m = MonadSpec::from_kind(kind, None)?;
        return Ok(match budget {
            Some(b) => m.with_budget(b),
            None => m,
        });
    }
    if Path::new(spec).exists() {
        let text = read(spec)?;
        let v: Value = serde_json::from_str(&text).map_err(|e| Error::Parse {
            location: format!("{spec} line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        let desc = v.get("monad").cloned().unwrap_or(v);
        return parse_monad_desc(&desc.to_string(), budget);
    }
    Err(Error::invalid(format!("unknown monad {spec:?}")))
}

fn labelled_map(table: &[usize], src: &TSpace, tgt: &TSpace) -> String {
    table
        .iter()
        .enumerate()
        .map(|(x, &y)| format!("{} -> {}", src.points().label(x), tgt.points().label(y)))
        .collect::<Vec<_>>()
        .join(", ")
}

fn space_json(s: &TSpace) -> Result<Value> {
    Ok(serde_json::to_value(SpaceFile::from_space(s)?).expect("serializable"))
}

fn cmd_check(s: &TSpace, as_json: bool) -> Result<String> {
    let r = space_report(s)?;
    if as_json {
        let v = json!({
            "R": r.r, "T": r.t, "K": r.k, "H": r.h, "A": r.a, "C": r.c, "F": r.f,
        });
        return Ok(format!("{v}\n"));
    }
    Ok(format!("{r}\n"))
}

fn cmd_reflect(kind: ReflectorKind, s: &TSpace, as_json: bool) -> Result<String> {
    let r = reflect(kind, s)?;
    if as_json {
        let v = json!({
            "kind": kind.name(),
            "unit": r.unit.map.table(),
            "reflected": space_json(r.reflected())?,
        });
        return Ok(format!("{v}\n"));
    }
    Ok(format!(
        "unit: {}\n{}",
        labelled_map(r.unit.map.table(), s, r.reflected()),
        serialize_space(r.reflected())?
    ))
}

fn cmd_extend(s: &TSpace, as_json: bool) -> Result<String> {
    let ext = barr_extend(s)?;
    let m = s.monad();
    let n = s.n();
    let pairs = ext
        .pairs
        .iter()
        .map(|(tt, t)| Ok((nested_index_to_json(m, n, tt)?, index_to_json(m, n, t)?)))
        .collect::<Result<Vec<_>>>()?;
    if as_json {
        let v = json!({ "pairs": pairs.iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>() });
        return Ok(format!("{v}\n"));
    }
    let mut out = format!("{} pairs\n", pairs.len());
    for (a, b) in pairs {
        out.push_str(&format!("{a} => {b}\n"));
    }
    Ok(out)
}

fn cmd_product(a: &TSpace, b: &TSpace, as_json: bool) -> Result<String> {
    let p = product_space(a, b)?;
    if as_json {
        return Ok(format!("{}\n", space_json(&p)?));
    }
    serialize_space(&p)
}

fn cmd_laws(m: &MonadSpec, max_n: usize, as_json: bool) -> Result<(i32, String)> {
    let report = check_monad_laws(m, max_n)?;
    let code = if report.all_passed() { 0 } else { 1 };
    if as_json {
        let checks: Vec<Value> = report
            .checks
            .iter()
            .map(|c| {
                json!({
                    "law": c.law.name(),
                    "n": c.n,
                    "instances": c.instances,
                    "counterexample": c.counterexample,
                })
            })
            .collect();
        let v = json!({
            "monad": report.monad,
            "max_n": report.max_n,
            "passed": report.all_passed(),
            "checks": checks,
        });
        return Ok((code, format!("{v}\n")));
    }
    Ok((code, report.to_string()))
}

fn dispatch(cli: &Cli) -> Result<(i32, String)> {
    let b = cli.budget;
    let j = cli.json;
    match &cli.command {
        Command::Check { file } => Ok((0, cmd_check(&load(file, b)?, j)?)),
        Command::Reflect { into, file } => {
            let kind = ReflectorKind::parse(into).expect("validated by clap");
            Ok((0, cmd_reflect(kind, &load(file, b)?, j)?))
        }
        Command::Extend { file } => Ok((0, cmd_extend(&load(file, b)?, j)?)),
        Command::Product { left, right } => {
            Ok((0, cmd_product(&load(left, b)?, &load(right, b)?, j)?))
        }
        Command::Laws { monad, max_n } => cmd_laws(&monad_from_arg(monad, b)?, *max_n, j),
        Command::Dot { file } => Ok((0, emit_dot(&load(file, b)?))),
    }
}

fn error_output(e: &Error, as_json: bool) -> Output {
    let code = exit_code(e);
    if as_json {
        let v = json!({ "error": e.kind(), "message": e.to_string() });
        return Output {
            code,
            stdout: format!("{v}\n"),
            stderr: String::new(),
        };
    }
    Output {
        code,
        stdout: String::new(),
        stderr: format!("error: {e}\n"),
    }
}

/// Runs one command line; `args` includes the program name.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Output {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match dispatch(&cli) {
        Ok((code, stdout)) => Output {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => error_output(&e, cli.json),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laws_by_kind_name() {
        let out = run(["tspaces", "laws", "--monad", "identity"]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.contains("associativity"));
    }

    #[test]
    fn laws_inline_json() {
        let spec = r#"{"kind":"monoid_action","monoid":{"size":2,"unit":0,"table":[[0,1],[1,0]]}}"#;
        let out = run(["tspaces", "--json", "laws", "--monad", spec, "--max-n", "2"]);
        assert_eq!(out.code, 0, "{}", out.stdout);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["passed"], true);
    }

    #[test]
    fn powerset_laws_at_three_points_exceed_the_budget() {
        let out = run(["tspaces", "laws", "--monad", "powerset"]);
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains("budget"));
    }

    #[test]
    fn bad_usage_exits_1() {
        assert_eq!(run(["tspaces", "frobnicate"]).code, 1);
        assert_eq!(run(["tspaces", "reflect", "--into", "Z", "x.json"]).code, 1);
        assert_eq!(run(["tspaces", "check", "/nonexistent/file.json"]).code, 1);
        assert_eq!(run(["tspaces", "--help"]).code, 0);
    }

    #[test]
    fn json_errors_carry_a_kind() {
        let out = run(["tspaces", "--json", "laws", "--monad", "nope"]);
        assert_eq!(out.code, 1);
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["error"], "invalid");
    }
}
