//! `sl4cube verify` runs the verification suites; `sl4cube table` emits CSV tables.

mod tables;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sl4cube::report::{Check, Status, VerificationReport};
use sl4cube::suites::{self, Fault, Suite, SuiteConfig};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const DEFAULT_ORACLE_N_MAX: u32 = 3;

#[derive(Parser)]
#[command(
    name = "sl4cube",
    version,
    about = "Exact verification of the sl4 / hypercube correspondence"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites over a range of N.
    Verify(VerifyArgs),
    /// Write a CSV table of exact values.
    Table(TableArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum SuiteArg {
    Sl4,
    Poly,
    Special,
    Cube,
    Tensor,
    Correspond,
    All,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Output {
    Json,
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[allow(clippy::enum_variant_names)]
enum FaultArg {
    CorruptGenerator,
    CorruptCalpSign,
    CorruptKrawtchouk,
}

#[derive(clap::Args)]
struct VerifyArgs {
    #[arg(long, env = "SL4CUBE_N_MIN", default_value_t = 0)]
    n_min: u32,
    #[arg(long, env = "SL4CUBE_N_MAX", default_value_t = 5)]
    n_max: u32,
    /// Comma-separated list of suites.
    #[arg(
        long,
        env = "SL4CUBE_SUITE",
        value_enum,
        value_delimiter = ',',
        default_value = "all"
    )]
    suite: Vec<SuiteArg>,
    /// Largest N for brute-force tensor and group oracles [default: min(3, n-max)].
    #[arg(long, env = "SL4CUBE_ORACLE_N_MAX")]
    oracle_n_max: Option<u32>,
    /// Basepoint vertex as a bitmask; bits at or above N are ignored.
    #[arg(long, env = "SL4CUBE_BASEPOINT", default_value_t = 0)]
    basepoint: u32,
    #[arg(long, env = "SL4CUBE_OUTPUT", value_enum, default_value = "text")]
    output: Output,
    #[arg(long, env = "SL4CUBE_SEED", default_value_t = 0)]
    seed: u64,
    #[arg(long, env = "SL4CUBE_FAULT", value_enum, hide = true)]
    fault: Option<FaultArg>,
}

#[derive(clap::Args)]
struct TableArgs {
    #[arg(long, env = "SL4CUBE_KIND", value_enum)]
    kind: tables::TableKind,
    #[arg(long, env = "SL4CUBE_N")]
    n: u32,
    /// Output path; stdout when absent.
    #[arg(long, env = "SL4CUBE_OUT")]
    out: Option<PathBuf>,
}

impl VerifyArgs {
    fn config(&self) -> SuiteConfig {
        let suites = if self.suite.contains(&SuiteArg::All) {
            Suite::ALL.to_vec()
        } else {
            self.suite
                .iter()
                .map(|s| match s {
                    SuiteArg::Sl4 => Suite::Sl4,
                    SuiteArg::Poly => Suite::Poly,
                    SuiteArg::Special => Suite::Special,
                    SuiteArg::Cube => Suite::Cube,
                    SuiteArg::Tensor => Suite::Tensor,
                    SuiteArg::Correspond => Suite::Correspond,
                    SuiteArg::All => unreachable!(),
                })
                .collect()
        };
        SuiteConfig {
            n_min: self.n_min,
            n_max: self.n_max,
            suites,
            oracle_n_max: self
                .oracle_n_max
                .unwrap_or(DEFAULT_ORACLE_N_MAX.min(self.n_max)),
            basepoint: self.basepoint,
            seed: self.seed,
            fault: self.fault.map(|f| match f {
                FaultArg::CorruptGenerator => Fault::CorruptGenerator,
                FaultArg::CorruptCalpSign => Fault::CorruptCalpSign,
                FaultArg::CorruptKrawtchouk => Fault::CorruptKrawtchouk,
            }),
        }
    }
}

#[derive(Serialize)]
struct JsonReport<'a> {
    config: &'a SuiteConfig,
    checks: &'a [Check],
}

fn write_report(
    cfg: &SuiteConfig,
    rep: &VerificationReport,
    output: Output,
    out: &mut impl Write,
) -> anyhow::Result<()> {
    match output {
        Output::Json => {
            let doc = JsonReport {
                config: cfg,
                checks: &rep.checks,
            };
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)?;
        }
        Output::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["id", "anchor", "n", "status", "witness"])?;
            for c in &rep.checks {
                let n = c.n.map(|n| n.to_string()).unwrap_or_default();
                let status = c.status.to_string();
                w.write_record([
                    &c.id,
                    &c.anchor,
                    &n,
                    &status,
                    c.witness.as_deref().unwrap_or(""),
                ])?;
            }
            w.flush()?;
        }
        Output::Text => {
            writeln!(out, "# config {}", serde_json::to_string(cfg)?)?;
            for c in &rep.checks {
                let n = c.n.map(|n| format!(" N={n}")).unwrap_or_default();
                write!(out, "{:<7} {}{n}", c.status, c.id)?;
                if let Some(w) = &c.witness {
                    write!(out, "  witness: {w}")?;
                }
                writeln!(out)?;
            }
        }
    }
    Ok(())
}

fn verify(args: VerifyArgs) -> ExitCode {
    let cfg = args.config();
    if let Err(e) = cfg.validate() {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_USAGE);
    }
    let rep = suites::run(&cfg);
    let stdout = std::io::stdout();
    if let Err(e) = write_report(&cfg, &rep, args.output, &mut stdout.lock()) {
        eprintln!("error: {e}");
        return ExitCode::from(EXIT_FAIL);
    }
    eprintln!(
        "{} checks: {} pass, {} fail, {} skipped",
        rep.checks.len(),
        rep.count(Status::Pass),
        rep.count(Status::Fail),
        rep.count(Status::Skipped)
    );
    if rep.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAIL)
    }
}

fn table(args: TableArgs) -> anyhow::Result<()> {
    let t = tables::build(args.kind, args.n)?;
    match &args.out {
        Some(path) => {
            let f = std::fs::File::create(path)
                .map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
            tables::write_csv(&t, f)?;
        }
        None => tables::write_csv(&t, std::io::stdout().lock())?,
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match cli.command {
        Command::Verify(args) => verify(args),
        Command::Table(args) => match table(args) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: {e}");
                ExitCode::from(EXIT_FAIL)
            }
        },
    }
}
