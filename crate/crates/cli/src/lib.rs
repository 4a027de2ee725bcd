//! The `twistlab` command line: one subcommand per operation, search
//! harnesses, and a fixture runner.
//!
//! Exit codes: 0 success, 1 computation error or failing fixture, 2 a
//! search found counterexamples, 64 usage error.

pub mod error;
pub mod fixtures;
pub mod output;
pub mod request;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use twistlab_core::Partition;
use twistlab_lab::SearchKind;
use twistlab_specht::SpechtOptions;

pub use error::{CliError, Result};
pub use output::Format;
pub use request::{evaluate, Outcome, Request, SpechtOp};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_COUNTEREXAMPLE: i32 = 2;
pub const EXIT_USAGE: i32 = 64;

fn partition(s: &str) -> std::result::Result<Partition, String> {
    s.parse().map_err(|e: twistlab_core::Error| e.to_string())
}

#[derive(Debug, Parser)]
#[command(name = "twistlab", version, about = "Mullineux map, twisting and modular Specht module computations")]
pub struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct PLambda {
    #[arg(long)]
    pub p: u64,
    /// Comma-separated parts, largest first.
    #[arg(long, value_parser = partition, allow_hyphen_values = true)]
    pub lambda: Partition,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub p: u64,
    #[arg(long)]
    pub d: u64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// The Mullineux image of a p-regular partition.
    Mull {
        #[command(flatten)]
        args: PLambda,
        /// Include the Mullineux symbol of the input.
        #[arg(long)]
        show_symbol: bool,
        /// Treat the input as a p-restricted label.
        #[arg(long)]
        restricted: bool,
    },
    /// Restricted label of the trivial module on n letters.
    Tau {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
    },
    /// Each part of a distinct-part partition repeated p - 1 times.
    Hat(PLambda),
    /// The Mullineux symbol.
    Symbol(PLambda),
    /// Abacus display, p-core and weight.
    Abacus {
        #[command(flatten)]
        args: PLambda,
        #[arg(long)]
        beads: Option<usize>,
    },
    /// Ext¹ between simple modules labelled by two-part partitions.
    KsExt {
        #[arg(long)]
        p: u64,
        #[arg(long, value_parser = partition)]
        lam: Partition,
        #[arg(long, value_parser = partition)]
        mu: Partition,
    },
    /// Closed-form endomorphism dimension and indecomposability of the
    /// hook (d - r, 1^r) in characteristic two.
    Murphy {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        r: u64,
    },
    /// Congruence criterion for invariants of a Specht module.
    H0(PLambda),
    /// Linear algebra on Specht modules over GF(p).
    #[command(subcommand)]
    Specht(SpechtCommand),
    /// Exhaustive searches with reports.
    #[command(subcommand)]
    Search(SearchCommand),
    /// Evaluate a fixture file (default: the bundled reference values).
    Verify { path: Option<PathBuf> },
}

#[derive(Debug, Subcommand)]
pub enum SpechtCommand {
    /// Dimension of Hom(S^lam, S^mu).
    Hom {
        #[arg(long)]
        p: u64,
        #[arg(long, alias = "lambda", value_parser = partition)]
        lam: Partition,
        #[arg(long, value_parser = partition)]
        mu: Partition,
    },
    /// Whether S^lambda splits.
    Decomposable {
        #[command(flatten)]
        args: PLambda,
        /// Seed for the sampling fallback.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Dimension of the invariants of S^lambda.
    H0(PLambda),
}

#[derive(Debug, Subcommand)]
pub enum SearchCommand {
    /// p-regular partitions of d where twisting commutes with the map.
    FixedPoints(ScanArgs),
    /// Whether commuting persists one more twist.
    Persistence(ScanArgs),
    /// Partitions whose twisted image is divisible by p.
    PImage(ScanArgs),
    /// Differences between repeated twists of one partition.
    MultiTwist {
        #[command(flatten)]
        args: PLambda,
        #[arg(long)]
        max_b: u32,
        #[arg(long)]
        jobs: Option<usize>,
    },
    /// Twist stability of two-part Ext¹ over all pairs of d.
    KsStability(ScanArgs),
    /// Blocks of d with weights and p x p members.
    Census {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        d: u64,
    },
}

fn scan(search: SearchKind, a: ScanArgs) -> Request {
    Request::Search {
        search,
        p: a.p,
        d: Some(a.d),
        lambda: None,
        max_b: None,
        jobs: a.jobs,
    }
}

impl Command {
    /// The request this command evaluates; `None` for `verify`.
    pub fn request(self) -> Option<Request> {
        let r = match self {
            Command::Mull {
                args,
                show_symbol,
                restricted,
            } => Request::Mull {
                p: args.p,
                lambda: args.lambda,
                show_symbol,
                restricted,
            },
            Command::Tau { p, n } => Request::Tau { p, n },
            Command::Hat(a) => Request::Hat { p: a.p, lambda: a.lambda },
            Command::Symbol(a) => Request::Symbol { p: a.p, lambda: a.lambda },
            Command::Abacus { args, beads } => Request::Abacus {
                p: args.p,
                lambda: args.lambda,
                beads,
            },
            Command::KsExt { p, lam, mu } => Request::Ks { p, lam, mu },
            Command::Murphy { d, r } => Request::Murphy { d, r },
            Command::H0(a) => Request::H0 { p: a.p, lambda: a.lambda },
            Command::Specht(s) => match s {
                SpechtCommand::Hom { p, lam, mu } => Request::Specht {
                    op: SpechtOp::Hom,
                    p,
                    lambda: lam,
                    mu: Some(mu),
                    seed: None,
                },
                SpechtCommand::Decomposable { args, seed } => Request::Specht {
                    op: SpechtOp::Decomposable,
                    p: args.p,
                    lambda: args.lambda,
                    mu: None,
                    seed,
                },
                SpechtCommand::H0(a) => Request::Specht {
                    op: SpechtOp::H0,
                    p: a.p,
                    lambda: a.lambda,
                    mu: None,
                    seed: None,
                },
            },
            Command::Search(s) => match s {
                SearchCommand::FixedPoints(a) => scan(SearchKind::FixedPoints, a),
                SearchCommand::Persistence(a) => scan(SearchKind::Persistence, a),
                SearchCommand::PImage(a) => scan(SearchKind::PImage, a),
                SearchCommand::KsStability(a) => scan(SearchKind::KsStability, a),
                SearchCommand::MultiTwist { args, max_b, jobs } => Request::Search {
                    search: SearchKind::MultiTwist,
                    p: args.p,
                    d: None,
                    lambda: Some(args.lambda),
                    max_b: Some(max_b),
                    jobs,
                },
                SearchCommand::Census { p, d } => Request::Search {
                    search: SearchKind::Census,
                    p,
                    d: Some(d),
                    lambda: None,
                    max_b: None,
                    jobs: None,
                },
            },
            Command::Verify { .. } => return None,
        };
        Some(r)
    }
}

fn emit(text: &str, out: Option<&PathBuf>, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        }),
        None => stdout.write_all(text.as_bytes()).map_err(|source| CliError::Io {
            path: "<stdout>".into(),
            source,
        }),
    }
}

fn verify_output(summary: &fixtures::VerifySummary, format: Format) -> Result<String> {
    let value = serde_json::to_value(summary).expect("summaries serialize");
    Ok(match format {
        Format::Json => serde_json::to_string_pretty(&value).expect("values serialize") + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["id", "kind", "pass", "detail"])?;
            for r in &summary.results {
                let pass = r.pass.to_string();
                w.write_record([&r.id, &r.kind, &pass, r.detail.as_deref().unwrap_or("")])?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
            String::from_utf8(bytes).expect("csv output is utf-8")
        }
        Format::Table => {
            let mut s = String::new();
            for r in &summary.results {
                let status = if r.pass { "pass" } else { "FAIL" };
                s.push_str(&format!("{status}  {:<8} {}", r.kind, r.id));
                if let Some(d) = &r.detail {
                    s.push_str(&format!("  {d}"));
                }
                s.push('\n');
            }
            s.push_str(&format!(
                "{}: {} checked, {} passed, {} failed\n",
                summary.source, summary.checked, summary.passed, summary.failed
            ));
            s
        }
    })
}

fn dispatch(cli: Cli, stdout: &mut dyn Write) -> Result<i32> {
    let opts = SpechtOptions::from_env();
    let (format, out) = (cli.format, cli.out);
    if let Command::Verify { path } = &cli.command {
        let (text, source) = match path {
            Some(p) => (
                std::fs::read_to_string(p).map_err(|source| CliError::Io {
                    path: p.display().to_string(),
                    source,
                })?,
                p.display().to_string(),
            ),
            None => (fixtures::BUNDLED.to_string(), fixtures::BUNDLED_NAME.to_string()),
        };
        let file = fixtures::parse(&text)?;
        let summary = fixtures::verify(&file, &source, &opts);
        emit(&verify_output(&summary, format)?, out.as_ref(), stdout)?;
        return Ok(if summary.failed == 0 { EXIT_OK } else { EXIT_ERROR });
    }
    let request = cli.command.request().expect("verify handled above");
    let outcome = evaluate(&request, &opts)?;
    emit(&output::render(&outcome, format)?, out.as_ref(), stdout)?;
    Ok(if outcome.has_counterexamples() {
        EXIT_COUNTEREXAMPLE
    } else {
        EXIT_OK
    })
}

/// Runs the command line `args` (program name first), writing results to
/// `stdout` and diagnostics to `stderr`. Returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                stderr.write_all(text.as_bytes())
            } else {
                stdout.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli, stdout) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}
