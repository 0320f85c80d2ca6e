//! Command-line front end for the `harmonia` binary.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 invalid arguments.

use std::fmt::Write as _;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, mu, Params, Quantity};
use crate::kernels::{BoseForm, PartitionForm};
use crate::oracles::{self, DEFAULT_BUDGET};
use crate::quadrature::{self, default_node_count, QuadratureRule, RuleFamily, Target};
use crate::report::{ComputationResult, Method, VerificationReport};
use crate::suites::{self, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Environment variable naming a default output directory.
pub const OUT_DIR_ENV: &str = "HARMONIA_OUT_DIR";

const BENCH_HELP: &str = "\
Benchmark CSV columns, in order:
  task,param,nodes_or_terms,elapsed_ms,value_digest,abs_err
task: partition_exact | bose_exact | quad_trapezoid | quad_gauss | quad_cc | oracle_pentagonal | oracle_euler_dp
nodes_or_terms: expanded-integrand term count (exact), node count (quad), series length (oracle)
value_digest: exact decimal value, or the float estimate for quadrature rows
abs_err: |estimate - exact| for quadrature rows, empty otherwise";

#[derive(Debug, Parser)]
#[command(
    name = "harmonia",
    version,
    about = "Harmonic-integral representations of Bose counts B(N,s) and partition numbers p_s"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub common: CommonArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Output format
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,

    /// Output file (default: stdout, or $HARMONIA_OUT_DIR/<command>.<ext>)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    /// Random seed for randomized suites
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,

    /// State budget for brute-force enumeration (at least 1000)
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,

    /// Worker threads (default: available parallelism)
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute one quantity by one method
    Compute(ComputeArgs),
    /// Tabulate mu(s) and p_s (exact vs oracle) for s = 1..max_s
    Table(TableArgs),
    /// Run a verification suite; exit 1 on any failure
    Verify(VerifyArgs),
    /// Time the exact, quadrature and oracle paths (CSV by default)
    #[command(after_help = BENCH_HELP)]
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuantityArg {
    Bose,
    Partition,
}

impl From<QuantityArg> for Quantity {
    fn from(q: QuantityArg) -> Self {
        match q {
            QuantityArg::Bose => Quantity::Bose,
            QuantityArg::Partition => Quantity::Partition,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Exact,
    Quad,
    Oracle,
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Sine18,
    Cosine24,
    Combined25,
    Sine35,
    Cosine42,
    Combined43,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RuleArg {
    Trapezoid,
    Gauss,
    Cc,
}

impl From<RuleArg> for RuleFamily {
    fn from(r: RuleArg) -> Self {
        match r {
            RuleArg::Trapezoid => RuleFamily::TrapezoidPeriodic,
            RuleArg::Gauss => RuleFamily::GaussLegendre,
            RuleArg::Cc => RuleFamily::ClenshawCurtis,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Text => "txt",
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ComputeArgs {
    #[arg(value_enum)]
    pub quantity: QuantityArg,

    /// Number of particles N (Bose counts only)
    #[arg(long = "N")]
    pub n: Option<u64>,

    /// Number of cells (Bose) or the integer to partition
    #[arg(long)]
    pub s: u64,

    #[arg(long, value_enum, default_value = "exact")]
    pub method: MethodArg,

    /// Integral form for --method quad (default: the combined form)
    #[arg(long, value_enum)]
    pub form: Option<FormArg>,

    #[arg(long, value_enum, default_value = "trapezoid")]
    pub rule: RuleArg,

    /// Node count override (intervals for the trapezoid rule)
    #[arg(long)]
    pub nodes: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct TableArgs {
    #[arg(long = "max-s", default_value_t = 10)]
    pub max_s: u64,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    /// oracles | exact | quadrature | identities | parity | all
    #[arg(long, default_value = "all")]
    pub suite: String,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    /// Largest s in the exact partition sweep (grid 5, 10, 20, 30, 40)
    #[arg(long = "max-s", default_value_t = 40)]
    pub max_s: u64,

    /// Partition order for the quadrature sweeps
    #[arg(long = "quad-s", default_value_t = 6)]
    pub quad_s: u64,
}

/// Rendered output plus the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub body: String,
    pub exit_code: i32,
    pub default_name: &'static str,
    pub format: Format,
}

/// Runs a parsed command line without touching stdout.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let common = &cli.common;
    if common.budget < 1_000 {
        return Err(Error::InvalidArgument("--budget must be at least 1000".into()));
    }
    if let Some(threads) = common.threads {
        if threads == 0 {
            return Err(Error::InvalidArgument("--threads must be at least 1".into()));
        }
        // a second initialisation in the same process is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    }
    match &cli.command {
        Command::Compute(args) => {
            let format = common.format.unwrap_or(Format::Json);
            let result = cmd_compute(args, common)?;
            Ok(Outcome {
                body: render_result(&result, format),
                exit_code: EXIT_OK,
                default_name: "compute",
                format,
            })
        }
        Command::Table(args) => {
            let format = common.format.unwrap_or(Format::Text);
            let rows = cmd_table(args.max_s)?;
            let ok = rows.iter().all(|r| r.matches);
            Ok(Outcome {
                body: render_table(&rows, format),
                exit_code: if ok { EXIT_OK } else { EXIT_MISMATCH },
                default_name: "table",
                format,
            })
        }
        Command::Verify(args) => {
            let format = common.format.unwrap_or(Format::Text);
            let suite: Suite = args.suite.parse()?;
            let report = cmd_verify(suite, common.seed, common.budget);
            Ok(Outcome {
                body: render_report(&report, format),
                exit_code: if report.all_passed() { EXIT_OK } else { EXIT_MISMATCH },
                default_name: "verify",
                format,
            })
        }
        Command::Bench(args) => {
            let format = common.format.unwrap_or(Format::Csv);
            let rows = cmd_bench(args)?;
            Ok(Outcome {
                body: render_bench(&rows, format),
                exit_code: EXIT_OK,
                default_name: "bench",
                format,
            })
        }
    }
}

/// Where the output goes: `--out`, else `$HARMONIA_OUT_DIR/<command>.<ext>`,
/// else stdout (`None`).
pub fn output_path(common: &CommonArgs, outcome: &Outcome) -> Option<PathBuf> {
    if let Some(p) = &common.out {
        return Some(p.clone());
    }
    std::env::var_os(OUT_DIR_ENV)
        .filter(|d| !d.is_empty())
        .map(|dir| PathBuf::from(dir).join(format!("{}.{}", outcome.default_name, outcome.format.extension())))
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn bose_form(form: Option<FormArg>) -> Result<BoseForm> {
    match form {
        None | Some(FormArg::Combined25) => Ok(BoseForm::Combined25),
        Some(FormArg::Sine18) => Ok(BoseForm::Sine18),
        Some(FormArg::Cosine24) => Ok(BoseForm::Cosine24),
        Some(other) => Err(Error::InvalidArgument(format!(
            "form {other:?} does not apply to Bose counts"
        ))),
    }
}

fn partition_form(form: Option<FormArg>) -> Result<PartitionForm> {
    match form {
        None | Some(FormArg::Combined43) => Ok(PartitionForm::Combined43),
        Some(FormArg::Sine35) => Ok(PartitionForm::Sine35),
        Some(FormArg::Cosine42) => Ok(PartitionForm::Cosine42),
        Some(other) => Err(Error::InvalidArgument(format!(
            "form {other:?} does not apply to partitions"
        ))),
    }
}

pub fn cmd_compute(args: &ComputeArgs, common: &CommonArgs) -> Result<ComputationResult> {
    let quantity: Quantity = args.quantity.into();
    let params = match quantity {
        Quantity::Bose => Params::bose(
            args.n
                .ok_or_else(|| Error::InvalidArgument("bose requires --N".into()))?,
            args.s,
        ),
        Quantity::Partition => {
            if args.n.is_some() {
                return Err(Error::InvalidArgument("partition takes no --N".into()));
            }
            Params::partition(args.s)
        }
    };
    if args.s < 1 {
        return Err(Error::InvalidArgument("--s must be at least 1".into()));
    }
    if args.nodes == Some(0) {
        return Err(Error::InvalidArgument("--nodes must be at least 1".into()));
    }
    if args.method != MethodArg::Quad && args.form.is_some() {
        return Err(Error::InvalidArgument("--form applies to --method quad only".into()));
    }

    let mut result = ComputationResult {
        quantity,
        params,
        method: Method::Exact,
        form: None,
        value: None,
        float_value: None,
        abs_err: None,
        nodes: None,
        exactness_degree: None,
        elapsed_ms: 0.0,
        seed: None,
    };
    let start = Instant::now();
    match args.method {
        MethodArg::Exact => {
            let r = match quantity {
                Quantity::Bose => exact::bose_exact(params.n.unwrap_or(0), params.s)?,
                Quantity::Partition => exact::partition_exact(params.s)?,
            };
            result.value = Some(r.value.to_string());
        }
        MethodArg::Oracle => {
            result.method = Method::Oracle;
            let v = match quantity {
                Quantity::Bose => oracles::binomial_oracle(params.n.unwrap_or(0), params.s)?,
                Quantity::Partition => oracles::partition_oracle(params.s),
            };
            result.value = Some(v.to_string());
        }
        MethodArg::Brute => {
            result.method = Method::Brute;
            let v = match quantity {
                Quantity::Bose => oracles::brute_count_bose(params.n.unwrap_or(0), params.s, common.budget)?,
                Quantity::Partition => oracles::brute_count_partition(params.s, common.budget)?,
            };
            result.value = Some(v.to_string());
        }
        MethodArg::Quad => {
            result.method = Method::Quad;
            let target = match quantity {
                Quantity::Bose => Target::Bose {
                    n: params.n.unwrap_or(0),
                    s: params.s,
                    form: bose_form(args.form)?,
                },
                Quantity::Partition => Target::Partition {
                    s: params.s,
                    form: partition_form(args.form)?,
                },
            };
            target.check_domain()?;
            let family: RuleFamily = args.rule.into();
            let nodes = args.nodes.unwrap_or_else(|| default_nodes(&target, family));
            let rule = QuadratureRule::build(family, nodes)?;
            let est = quadrature::quad(target, &rule)?;
            result.form = Some(target.form_name().to_string());
            result.float_value = Some(est.value);
            result.abs_err = Some(est.abs_err);
            result.nodes = Some(est.nodes);
            result.exactness_degree = est.exactness_degree;
        }
    }
    result.elapsed_ms = millis(start);
    Ok(result)
}

/// Exact trapezoid count for the periodic rule; for the algebraic rules one
/// node per unit of frequency, which resolves the oscillation comfortably.
fn default_nodes(target: &Target, family: RuleFamily) -> usize {
    match family {
        RuleFamily::TrapezoidPeriodic => default_node_count(target.degree()),
        _ => (target.degree() as usize + 1).max(2),
    }
}

pub fn render_result(result: &ComputationResult, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(result).expect("result serializes");
            s.push('\n');
            s
        }
        Format::Csv => format!("{}\n{}\n", ComputationResult::CSV_HEADER, result.csv_row()),
        Format::Text => result.to_text(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub s: u64,
    pub mu: i64,
    pub exact: String,
    pub oracle: String,
    #[serde(rename = "match")]
    pub matches: bool,
}

/// Rows `(s, mu(s), p_s exact, p_s oracle, match)` for `s = 1..=max_s`.
pub fn cmd_table(max_s: u64) -> Result<Vec<TableRow>> {
    if max_s < 1 {
        return Err(Error::InvalidArgument("--max-s must be at least 1".into()));
    }
    (1..=max_s)
        .into_par_iter()
        .map(|s| {
            let exact = exact::partition_exact(s)?.value;
            let oracle = oracles::partition_oracle(s);
            Ok(TableRow {
                s,
                mu: mu(s),
                matches: exact == oracle,
                exact: exact.to_string(),
                oracle: oracle.to_string(),
            })
        })
        .collect()
}

fn csv_from_rows<T: Serialize>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).expect("in-memory csv write");
    }
    String::from_utf8(w.into_inner().expect("in-memory csv flush")).expect("utf-8 csv")
}

pub fn render_table(rows: &[TableRow], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(rows).expect("rows serialize");
            s.push('\n');
            s
        }
        Format::Csv => csv_from_rows(rows),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "{:>4} {:>8} {:>24} {:>24} match", "s", "mu", "p_s exact", "p_s oracle");
            for r in rows {
                let _ = writeln!(out, "{:>4} {:>8} {:>24} {:>24} {}", r.s, r.mu, r.exact, r.oracle, r.matches);
            }
            out
        }
    }
}

pub fn cmd_verify(suite: Suite, seed: u64, budget: u64) -> VerificationReport {
    suites::run_suite(suite, seed, budget)
}

pub fn render_report(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => report.to_csv(),
        Format::Text => report.to_text(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRow {
    pub task: String,
    pub param: String,
    pub nodes_or_terms: usize,
    pub elapsed_ms: f64,
    pub value_digest: String,
    pub abs_err: Option<f64>,
}

const PARTITION_BENCH_GRID: [u64; 5] = [5, 10, 20, 30, 40];
const BOSE_BENCH_GRID: [u64; 3] = [4, 8, 12];
const ORACLE_BENCH_GRID: [u64; 2] = [100, 500];
const ALGEBRAIC_BENCH_NODES: [usize; 4] = [8, 16, 32, 64];

pub fn cmd_bench(args: &BenchArgs) -> Result<Vec<BenchRow>> {
    if args.quad_s < 1 {
        return Err(Error::InvalidArgument("--quad-s must be at least 1".into()));
    }
    let mut rows = Vec::new();

    for &s in PARTITION_BENCH_GRID.iter().filter(|&&s| s <= args.max_s) {
        let start = Instant::now();
        let r = exact::partition_exact(s)?;
        rows.push(BenchRow {
            task: "partition_exact".into(),
            param: format!("s={s}"),
            nodes_or_terms: r.term_count,
            elapsed_ms: millis(start),
            value_digest: r.value.to_string(),
            abs_err: None,
        });
    }

    for &s in &BOSE_BENCH_GRID {
        let start = Instant::now();
        let r = exact::bose_special_exact(s)?;
        rows.push(BenchRow {
            task: "bose_exact".into(),
            param: format!("N={s} s={s}"),
            nodes_or_terms: r.term_count,
            elapsed_ms: millis(start),
            value_digest: r.value.to_string(),
            abs_err: None,
        });
    }

    let target = Target::Partition {
        s: args.quad_s,
        form: PartitionForm::Combined43,
    };
    let n0 = default_node_count(target.degree());
    let sweeps: [(&str, RuleFamily, Vec<usize>); 3] = [
        ("quad_trapezoid", RuleFamily::TrapezoidPeriodic, vec![n0, 2 * n0, 4 * n0]),
        ("quad_gauss", RuleFamily::GaussLegendre, ALGEBRAIC_BENCH_NODES.to_vec()),
        ("quad_cc", RuleFamily::ClenshawCurtis, ALGEBRAIC_BENCH_NODES.to_vec()),
    ];
    let exact_value = target.exact()?;
    for (task, family, node_counts) in sweeps {
        for n in node_counts {
            let rule = QuadratureRule::build(family, n)?;
            let start = Instant::now();
            let est = quadrature::quad(target, &rule)?;
            let elapsed_ms = millis(start);
            rows.push(BenchRow {
                task: task.into(),
                param: format!("s={} exact={exact_value}", args.quad_s),
                nodes_or_terms: rule.len(),
                elapsed_ms,
                value_digest: format!("{:.12}", est.value),
                abs_err: Some(est.abs_err),
            });
        }
    }

    for &s in &ORACLE_BENCH_GRID {
        let start = Instant::now();
        let v: BigInt = oracles::pentagonal_oracle(s);
        rows.push(BenchRow {
            task: "oracle_pentagonal".into(),
            param: format!("s={s}"),
            nodes_or_terms: s as usize + 1,
            elapsed_ms: millis(start),
            value_digest: v.to_string(),
            abs_err: None,
        });
        let start = Instant::now();
        let v = oracles::partition_oracle(s);
        rows.push(BenchRow {
            task: "oracle_euler_dp".into(),
            param: format!("s={s}"),
            nodes_or_terms: s as usize + 1,
            elapsed_ms: millis(start),
            value_digest: v.to_string(),
            abs_err: None,
        });
    }
    Ok(rows)
}

pub fn render_bench(rows: &[BenchRow], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(rows).expect("rows serialize");
            s.push('\n');
            s
        }
        Format::Csv | Format::Text => {
            let mut out = String::from("task,param,nodes_or_terms,elapsed_ms,value_digest,abs_err\n");
            for r in rows {
                let abs_err = r.abs_err.map(|e| format!("{e:e}")).unwrap_or_default();
                let _ = writeln!(
                    out,
                    "{},{},{},{:.3},{},{}",
                    r.task, r.param, r.nodes_or_terms, r.elapsed_ms, r.value_digest, abs_err
                );
            }
            out
        }
    }
}
