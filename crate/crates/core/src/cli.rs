//! Command-line front end. Every subcommand is a thin adapter over one
//! library operation.
//!
//! Exit codes: 0 success, 1 not found / false, 2 usage or domain error,
//! 3 arithmetic, resource or I/O failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use crate::arith::{jacobi, SpfSieve, DEFAULT_SIEVE_LIMIT};
use crate::egyptian_chain::chain;
use crate::error::{domain, Error, Result};
use crate::polyform::{eval, gap_pair, preimage_search, PolyId};
use crate::scan::{self, Conjecture, ReportFormat, ScanFilter, ScanOptions};
use crate::triple::{enumerate_all, gcd_class, match_structure, verify, SolutionTriple};
use crate::{type_a, type_b, type_c};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_FOUND: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_FAILURE: i32 = 3;

/// Upper end of `scan --full`.
pub const FULL_SCAN_LIMIT: u64 = 104_729;

#[derive(Debug, Parser)]
#[command(name = "erdos-straus", version, about = "Solution structures of 4/n = 1/x + 1/y + 1/z")]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Smallest-prime-factor sieve size.
    #[arg(long, global = true, env = "ES_SIEVE_LIMIT", default_value_t = DEFAULT_SIEVE_LIMIT)]
    pub sieve_limit: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check 4/n = 1/x + 1/y + 1/z exactly.
    Verify { n: u64, x: u64, y: u64, z: u64 },
    /// Enumerate every solution and classify it.
    Solve { n: u64 },
    /// Search for a witness of the given type.
    Search {
        n: u64,
        #[arg(long = "type", value_enum, default_value_t = WitnessType::Any)]
        kind: WitnessType,
    },
    /// Classify a range of denominators or look for counterexamples.
    Scan(ScanArgs),
    /// Consecutive run of solved denominators ending at 4 * n!.
    Chain { n: u64 },
    /// Polynomial family operations.
    #[command(subcommand)]
    Poly(PolyCommand),
    /// Dual of the Type B witness (d, n) for a.
    Dual { a: u64, d: u64, n: u64 },
    /// Jacobi symbol (a/m) for odd m.
    Jacobi {
        #[arg(allow_hyphen_values = true)]
        a: i64,
        m: u64,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum WitnessType {
    A,
    B,
    C,
    Any,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 2)]
    pub from: u64,
    #[arg(long, default_value_t = 10_000)]
    pub to: u64,
    /// Scan to 104729.
    #[arg(long)]
    pub full: bool,
    /// Primes only; otherwise every n = 1 (mod 4).
    #[arg(long)]
    pub primes_only: bool,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Write the report here (.json selects JSON, otherwise CSV).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Fill distinct_a_count.
    #[arg(long)]
    pub counts: bool,
    /// Skip the Type C search.
    #[arg(long)]
    pub no_type_c: bool,
    /// List primes up to --to violating conjecture 1 (A or B) or 2 (A, B or C).
    #[arg(long, value_parser = ["1", "2"])]
    pub counterexamples: Option<String>,
}

#[derive(Debug, Subcommand)]
pub enum PolyCommand {
    /// Evaluate at (x, y, t), or (x, y, t, z) for R.
    Eval { id: PolyId, args: Vec<u64> },
    /// Find arguments mapping to the target.
    Preimage { id: PolyId, target: u64 },
    /// Denominators S(1, s+1, t) and P(1, s+1, t), 4s apart.
    Gap { s: u64, t: u64 },
}

enum Outcome {
    Found(String, serde_json::Value),
    NotFound(String, serde_json::Value),
}

fn to_json<T: Serialize>(v: &T) -> serde_json::Value {
    serde_json::to_value(v).unwrap_or(serde_json::Value::Null)
}

fn fmt_triple(t: &SolutionTriple) -> String {
    let [x, y, z] = t.coords();
    format!("({x}, {y}, {z})")
}

fn search(n: u64, kind: WitnessType, sieve: &SpfSieve) -> Result<Outcome> {
    if n < 2 {
        return Err(domain(format!("search needs n >= 2, got {n}")));
    }
    let one_mod_four = n % 4 == 1;
    let kinds: &[WitnessType] = match kind {
        WitnessType::Any => &[WitnessType::A, WitnessType::B, WitnessType::C],
        k => std::slice::from_ref(match k {
            WitnessType::A => &WitnessType::A,
            WitnessType::B => &WitnessType::B,
            _ => &WitnessType::C,
        }),
    };
    for &k in kinds {
        let found = match k {
            WitnessType::A if one_mod_four => type_a::find_first_witness(n, Some(sieve))?
                .map(|w| Ok::<_, Error>(("A", to_json(&w), type_a::witness_to_triple(&w)?)))
                .transpose()?,
            WitnessType::A => type_a::congruence_search(n, true, Some(sieve))
                .map(|h| Ok::<_, Error>(("A", to_json(&h), h.to_triple()?)))
                .transpose()?,
            WitnessType::B => type_b::congruence_search(n, Some(sieve))?
                .map(|w| Ok::<_, Error>(("B", to_json(&w), type_b::witness_to_triple(&w)?)))
                .transpose()?,
            _ if one_mod_four => type_c::find_witness(n, Some(sieve))?
                .map(|w| Ok::<_, Error>(("C", to_json(&w), type_c::witness_to_triple(&w)?)))
                .transpose()?,
            _ => None,
        };
        if let Some((label, witness, triple)) = found {
            let text = format!("Type {label} witness {witness}\ntriple {}", fmt_triple(&triple));
            let value = json!({ "n": n, "type": label, "witness": witness, "triple": triple });
            return Ok(Outcome::Found(text, value));
        }
    }
    let label = match kind {
        WitnessType::A => "Type A",
        WitnessType::B => "Type B",
        WitnessType::C => "Type C",
        WitnessType::Any => "Type A, B or C",
    };
    Ok(Outcome::NotFound(format!("no {label} witness"), json!({ "n": n, "found": false })))
}

fn solve(n: u64) -> Result<Outcome> {
    let triples = enumerate_all(n)?;
    let mut lines = Vec::with_capacity(triples.len());
    let mut rows = Vec::with_capacity(triples.len());
    for t in &triples {
        let class = gcd_class(t);
        let shape = match_structure(t);
        let mut tags = Vec::new();
        if shape.type_a.is_some() {
            tags.push("A");
        }
        if shape.type_b.is_some() {
            tags.push("B");
        }
        if shape.type_c.is_some() {
            tags.push("C");
        }
        lines.push(format!("{} {class:?} [{}]", fmt_triple(t), tags.join(",")));
        rows.push(json!({ "triple": t, "gcd_class": class, "structure": shape }));
    }
    let text = format!("{} solutions\n{}", triples.len(), lines.join("\n"));
    Ok(Outcome::Found(text.trim_end().to_string(), json!({ "n": n, "solutions": rows })))
}

fn run_scan(a: &ScanArgs, sieve_limit: u64) -> Result<Outcome> {
    let to = if a.full { FULL_SCAN_LIMIT } else { a.to };
    let sieve = SpfSieve::new(sieve_limit.max(to))?;
    if let Some(c) = &a.counterexamples {
        let conj: Conjecture = c.parse()?;
        let hits = scan::find_counterexamples(to, conj, a.workers, &sieve)?;
        let text = if hits.is_empty() {
            format!("no counterexamples up to {to}")
        } else {
            hits.iter().map(|h| format!("{h:?}")).collect::<Vec<_>>().join("\n")
        };
        let value = json!({ "limit": to, "conjecture": c, "counterexamples": hits });
        return Ok(if hits.is_empty() {
            Outcome::Found(text, value)
        } else {
            Outcome::NotFound(text, value)
        });
    }
    let opts = ScanOptions {
        filter: if a.primes_only { ScanFilter::PrimesOnly } else { ScanFilter::All4k1 },
        workers: a.workers,
        with_counts: a.counts,
        type_c: !a.no_type_c,
    };
    let records = scan::scan_range(a.from, to, &opts, &sieve)?;
    let no_a = records.iter().filter(|r| !r.has_a).count();
    let no_ab = records.iter().filter(|r| !r.satisfies_ab()).count();
    let mut text = format!("{} records, {no_a} without A, {no_ab} without A or B", records.len());
    let mut value = json!({ "records": records.len(), "without_a": no_a, "without_ab": no_ab });
    if let Some(path) = &a.out {
        let bytes = scan::write_report(&records, ReportFormat::from_path(path), path)?;
        text.push_str(&format!("\nwrote {bytes} bytes to {}", path.display()));
        value["out"] = json!(path);
        value["bytes"] = json!(bytes);
    }
    Ok(Outcome::Found(text, value))
}

fn poly(cmd: &PolyCommand) -> Result<Outcome> {
    match cmd {
        PolyCommand::Eval { id, args } => {
            let v = eval(*id, args)?;
            Ok(Outcome::Found(v.to_string(), json!({ "id": id, "args": args, "value": v.to_string() })))
        }
        PolyCommand::Preimage { id, target } => Ok(match preimage_search(*target, *id)? {
            Some(args) => Outcome::Found(
                format!("{id}{args:?} = {target}"),
                json!({ "id": id, "target": target, "args": args }),
            ),
            None => Outcome::NotFound(
                format!("{target} is not a value of {id}"),
                json!({ "id": id, "target": target, "args": null }),
            ),
        }),
        PolyCommand::Gap { s, t } => {
            let g = gap_pair(*s, *t)?;
            let text = format!(
                "{} {}\n{} {}",
                g.n,
                fmt_triple(&g.triple),
                g.n_prime,
                fmt_triple(&g.triple_prime)
            );
            Ok(Outcome::Found(text, to_json(&g)))
        }
    }
}

fn dispatch(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Verify { n, x, y, z } => {
            let ok = verify(*n, *x, *y, *z)?;
            let value = json!({ "n": n, "x": x, "y": y, "z": z, "holds": ok });
            Ok(if ok {
                Outcome::Found("true".into(), value)
            } else {
                Outcome::NotFound("false".into(), value)
            })
        }
        Command::Solve { n } => solve(*n),
        Command::Search { n, kind } => {
            let sieve = SpfSieve::new(cli.sieve_limit)?;
            search(*n, *kind, &sieve)
        }
        Command::Scan(a) => run_scan(a, cli.sieve_limit),
        Command::Chain { n } => {
            let run = chain(*n)?;
            let text = run.iter().map(|(m, t)| format!("{m} {}", fmt_triple(t))).collect::<Vec<_>>();
            let rows: Vec<_> = run.iter().map(|(m, t)| json!({ "n": m, "triple": t })).collect();
            Ok(Outcome::Found(text.join("\n"), json!(rows)))
        }
        Command::Poly(p) => poly(p),
        Command::Dual { a, d, n } => {
            let (d2, n2, m2) = type_b::dual_witness(*a, *d, *n)?;
            Ok(Outcome::Found(
                format!("d = {d2}, n' = {n2}, modulus = {m2}"),
                json!({ "d": d2, "n": n2, "modulus": m2 }),
            ))
        }
        Command::Jacobi { a, m } => {
            let j = jacobi(*a, *m)?;
            Ok(Outcome::Found(j.to_string(), json!({ "a": a, "m": m, "symbol": j })))
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) => EXIT_USAGE,
        _ => EXIT_FAILURE,
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit code. Results go to `out`, diagnostics to `err`.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    let (code, text, value) = match dispatch(&cli) {
        Ok(Outcome::Found(t, v)) => (EXIT_OK, t, v),
        Ok(Outcome::NotFound(t, v)) => (EXIT_NOT_FOUND, t, v),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    };
    let res = if cli.json { writeln!(out, "{value}") } else { writeln!(out, "{text}") };
    if res.is_err() {
        return EXIT_FAILURE;
    }
    code
}

/// [`run_with`] on the process's stdout and stderr.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(argv, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
