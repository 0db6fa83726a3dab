//! Command-line front end: verification suites, fusion tables and the a_n
//! coefficients, with text or JSON reports.

mod suites;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use orbifusion::exact::Q;
use orbifusion::fusion::{
    classify_twisted, iterate_fuse, named, orbifold_fuse, tuples, FusionRing, TwistedLabel, UntwistedLabel,
};
use orbifusion::perm::Permutation;
use orbifusion::report::{CheckResult, Report};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(name = "orbifusion", version, about = "Exact checks for permutation-orbifold twisted modules and orbifold fusion")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Prints a_1..a_count of Delta_k(z) as exact rationals.
    An {
        #[arg(long)]
        k: u32,
        /// Number of coefficients.
        #[arg(long, visible_alias = "count", default_value_t = 12)]
        cutoff: usize,
        #[command(flatten)]
        output: Output,
    },
    /// Runs a verification suite.
    Verify {
        suite: Suite,
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Weight excess of the vectors acted on.
        #[arg(long, default_value_t = 4)]
        cutoff: i64,
        /// Exponent window: lowest exponents for transport, z0 range for jacobi.
        #[arg(long)]
        window: Option<i64>,
        #[arg(long, default_value = "1/2", value_parser = parse_q)]
        lambda: Q,
        #[arg(long, default_value = "1/3", value_parser = parse_q)]
        mu: Q,
        #[command(flatten)]
        output: Output,
    },
    /// Fuses an untwisted module with a sigma-twisted module.
    Fuse {
        /// Shipped ring name (z2..z6, ising, fibonacci) or a ring file path.
        #[arg(long)]
        ring: String,
        #[arg(long)]
        k: Option<usize>,
        /// sigma in cycle notation, 1-indexed; defaults to (1 2 ... k).
        #[arg(long)]
        perm: Option<String>,
        /// Comma-separated labels M_1,...,M_k.
        #[arg(long)]
        modules: Option<String>,
        /// Comma-separated labels, one per cycle of sigma.
        #[arg(long)]
        twisted: Option<String>,
        /// Enumerates every module tuple and twisted label for sigma.
        #[arg(long)]
        table: bool,
        #[command(flatten)]
        output: Output,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Delta,
    Jacobi,
    Transport,
    Genint,
}

#[derive(Clone, Copy, Debug, Default, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Args)]
struct Output {
    /// Writes the report to a file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Input error: reported with exit status 2.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn parse_q(s: &str) -> Result<Q, String> {
    s.trim().parse::<Q>().map_err(|e| format!("{s:?} is not a rational: {e}"))
}

struct Outcome {
    command: String,
    parameters: Map<String, Value>,
    report: Report,
    /// Command-specific payload: coefficients or fusion results.
    data: Value,
    text: Vec<String>,
}

fn main() -> ExitCode {
    orbifusion::exec::configure_threads_from_env();
    let cli = Cli::parse();
    let start = Instant::now();
    let (result, output) = match cli.command {
        Command::An { k, cutoff, output } => (run_an(k, cutoff), output),
        Command::Verify { suite, k, cutoff, window, lambda, mu, output } => {
            (suites::run(suite_name(suite), k, cutoff, window, lambda, mu), output)
        }
        Command::Fuse { ring, k, perm, modules, twisted, table, output } => {
            (run_fuse(&ring, k, perm.as_deref(), modules.as_deref(), twisted.as_deref(), table), output)
        }
    };
    let outcome = match result {
        Ok(o) => o,
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let elapsed = start.elapsed().as_millis() as u64;
    let passed = outcome.report.passed();
    let rendered = match output.format {
        Format::Json => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "command": outcome.command,
                "parameters": outcome.parameters,
                "checks": outcome.report.checks,
                "data": outcome.data,
                "passed": passed,
                "timing_ms": elapsed,
            });
            serde_json::to_string_pretty(&doc).expect("report serializes") + "\n"
        }
        Format::Text => render_text(&outcome, passed, elapsed),
    };
    match &output.out {
        Some(path) => {
            if let Err(e) = fs::write(path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::Delta => "delta",
        Suite::Jacobi => "jacobi",
        Suite::Transport => "transport",
        Suite::Genint => "genint",
    }
}

fn render_text(o: &Outcome, passed: bool, elapsed: u64) -> String {
    let mut s = String::new();
    for line in &o.text {
        s.push_str(line);
        s.push('\n');
    }
    for c in &o.report.checks {
        let status = if c.passed { "PASS" } else { "FAIL" };
        s.push_str(&format!("{status} {} [{}] ({} compared)\n", c.name, c.window, c.checked));
        if let Some(w) = &c.witness {
            s.push_str(&format!("     witness: {w}\n"));
        }
    }
    let failures = o.report.failures().len();
    s.push_str(&format!(
        "{}: {} checks, {} failed, {} identities, {elapsed} ms\n",
        if passed { "passed" } else { "FAILED" },
        o.report.checks.len(),
        failures,
        o.report.total_checked()
    ));
    s
}

fn run_an(k: u32, count: usize) -> Result<Outcome, InputError> {
    if !(1..=64).contains(&k) || !(1..=64).contains(&count) {
        return Err(InputError("an needs 1 <= k <= 64 and 1 <= count <= 64".into()));
    }
    let coeffs = orbifusion::delta::solve_an(k, count);
    let values: Vec<String> = coeffs.a.iter().map(|a| a.to_string()).collect();
    let mut check = CheckResult::new(format!("Delta_{k} defining series"), format!("a_1..a_{count}"));
    check.assert(orbifusion::delta::satisfies_definition(k, &coeffs.a, count + 1), || "a_n do not solve the defining equation".into());
    let text = values.iter().enumerate().map(|(i, v)| format!("a_{} = {v}", i + 1)).collect();
    let mut parameters = Map::new();
    parameters.insert("k".into(), json!(k));
    parameters.insert("count".into(), json!(count));
    Ok(Outcome {
        command: "an".into(),
        parameters,
        report: Report::from_iter([check]),
        data: json!({ "a": values }),
        text,
    })
}

fn load_ring(name: &str) -> Result<FusionRing, InputError> {
    if let Some(r) = FusionRing::shipped(name) {
        return Ok(r);
    }
    let text = fs::read_to_string(name).map_err(|e| InputError(format!("ring {name:?} is neither shipped nor readable: {e}")))?;
    FusionRing::from_json(&text).map_err(|e| InputError(format!("{name}: {e}")))
}

fn parse_labels(ring: &FusionRing, list: &str, what: &str) -> Result<Vec<usize>, InputError> {
    list.split(',')
        .enumerate()
        .map(|(i, l)| ring.index(l.trim()).map_err(|e| InputError(format!("{what} entry {}: {e}", i + 1))))
        .collect()
}

fn run_fuse(
    ring_spec: &str,
    k: Option<usize>,
    perm: Option<&str>,
    modules: Option<&str>,
    twisted: Option<&str>,
    table: bool,
) -> Result<Outcome, InputError> {
    let ring = load_ring(ring_spec)?;
    let ms = modules.map(|m| parse_labels(&ring, m, "--modules")).transpose()?;
    let k = match (k, &ms) {
        (Some(k), _) => k,
        (None, Some(ms)) => ms.len(),
        (None, None) => return Err(InputError("fuse needs --k or --modules".into())),
    };
    if !(1..=6).contains(&k) {
        return Err(InputError(format!("k = {k} outside 1..=6")));
    }
    let sigma = match perm {
        Some(p) => Permutation::parse(p, k).map_err(|e| InputError(format!("--perm: {e}")))?,
        None => Permutation::long_cycle(k),
    };
    let mut parameters = Map::new();
    parameters.insert("ring".into(), json!(ring.name));
    parameters.insert("k".into(), json!(k));
    parameters.insert("perm".into(), json!(sigma.to_string()));
    let mut oracle = CheckResult::new("orbifold_fuse == iterated single-slot fusion", format!("sigma = {sigma}"));
    let mut entries = Vec::new();
    let mut text = Vec::new();
    let mut fuse_one = |m: &UntwistedLabel, t: &TwistedLabel, oracle: &mut CheckResult| -> Result<(), InputError> {
        let got = orbifold_fuse(&ring, m, t)?;
        oracle.compare(|| format!("{} x {}", m.display(&ring), t.display(&ring)), &got, &iterate_fuse(&ring, m, t)?);
        let terms = named(&ring, &got);
        let sum: Vec<String> = terms
            .iter()
            .map(|n| if n.multiplicity == 1 { n.label.clone() } else { format!("{} {}", n.multiplicity, n.label) })
            .collect();
        text.push(format!("{} x {} = {}", m.display(&ring), t.display(&ring), sum.join(" + ")));
        entries.push(json!({ "modules": m.display(&ring), "twisted": t.display(&ring), "result": terms }));
        Ok(())
    };
    if table {
        for labels in tuples(ring.len(), k) {
            for t in classify_twisted(&ring, &sigma) {
                fuse_one(&UntwistedLabel::plain(labels.clone()), &t, &mut oracle)?;
            }
        }
    } else {
        let ms = ms.ok_or_else(|| InputError("fuse needs --modules (or --table)".into()))?;
        let ts = twisted.ok_or_else(|| InputError("fuse needs --twisted (or --table)".into()))?;
        let ts = parse_labels(&ring, ts, "--twisted")?;
        parameters.insert("modules".into(), json!(modules));
        parameters.insert("twisted".into(), json!(twisted));
        let t = TwistedLabel::new(sigma.clone(), ts)?;
        fuse_one(&UntwistedLabel { labels: ms, mu: None }, &t, &mut oracle)?;
    }
    parameters.insert("table".into(), json!(table));
    Ok(Outcome {
        command: "fuse".into(),
        parameters,
        report: Report::from_iter([oracle]),
        data: json!({ "fusions": entries }),
        text,
    })
}
