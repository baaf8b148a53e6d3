use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use hgs_core::exec::{DEFAULT_ELEMENT_CAP, DEFAULT_SUBGROUP_CAP, ELEMENT_CAP_ENV, SUBGROUP_CAP_ENV};
use hgs_core::report::{self, Command, Format, RunConfig, TypeSel};
use hgs_core::Caps;

const EXIT_DIFF: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_ERROR: u8 = 3;

/// Hopf-Galois structures on extensions of squarefree degree.
#[derive(Parser, Debug)]
#[command(name = "hgs", version)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Closed-form catalog for degree pq, p = 2q + 1.
    Catalog {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate transitive subgroups of holomorphs of degree pq or n.
    Enumerate {
        #[command(flatten)]
        degree: Degree,
        #[command(flatten)]
        common: Common,
    },
    /// Cross-check the catalog against enumeration.
    Verify {
        #[arg(long)]
        q: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Brute-force counting check over transitive groups of degree at most 6.
    Oracle {
        /// Only this degree (at most 7).
        #[arg(long)]
        n: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Realizability verdicts for candidate groups of degree pq or n.
    Realizable {
        #[command(flatten)]
        degree: Degree,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct Degree {
    /// Sophie Germain prime; the degree is q(2q + 1).
    #[arg(long)]
    q: Option<u64>,
    /// Squarefree degree.
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long = "type", value_enum, default_value_t = TypeArg::Both)]
    ty: TypeArg,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Largest group materialised.
    #[arg(long, env = ELEMENT_CAP_ENV, default_value_t = DEFAULT_ELEMENT_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
    element_cap: u64,
    /// Largest subgroup list enumerated.
    #[arg(long, env = SUBGROUP_CAP_ENV, default_value_t = DEFAULT_SUBGROUP_CAP as u64, value_parser = clap::value_parser!(u64).range(1..))]
    subgroup_cap: u64,
    /// Worker threads (1 runs sequentially).
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    workers: Option<u64>,
    /// Write the report here instead of standard output.
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum TypeArg {
    Cyclic,
    Metacyclic,
    Both,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Json,
    Csv,
    Md,
}

fn config(cli: &Cli) -> (RunConfig, &Common) {
    let (command, q, n, common) = match &cli.command {
        Cmd::Catalog { q, common } => (Command::Catalog, Some(*q), None, common),
        Cmd::Verify { q, common } => (Command::Verify, Some(*q), None, common),
        Cmd::Enumerate { degree, common } => (Command::Enumerate, degree.q, degree.n, common),
        Cmd::Realizable { degree, common } => (Command::Realizable, degree.q, degree.n, common),
        Cmd::Oracle { n, common } => (Command::Oracle, None, *n, common),
    };
    let workers = common
        .workers
        .map(|w| w as usize)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let cfg = RunConfig {
        command,
        q,
        n,
        ty: match common.ty {
            TypeArg::Cyclic => TypeSel::Cyclic,
            TypeArg::Metacyclic => TypeSel::Metacyclic,
            TypeArg::Both => TypeSel::Both,
        },
        caps: Caps {
            elements: common.element_cap as usize,
            subgroups: common.subgroup_cap as usize,
        },
        workers,
    };
    (cfg, common)
}

fn execute(cli: &Cli) -> Result<bool> {
    let (cfg, common) = config(cli);
    let start = Instant::now();
    let report = report::run(&cfg)?;
    let format = match common.format {
        FormatArg::Json => Format::Json,
        FormatArg::Csv => Format::Csv,
        FormatArg::Md => Format::Md,
    };
    let text = report::emit(&report, format);
    match &common.output {
        Some(path) => std::fs::write(path, &text).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().lock().write_all(text.as_bytes()).context("writing report")?,
    }
    eprintln!(
        "{} classes, {} discrepancies, {:.2?} on {} worker(s)",
        report.summary.classes,
        report.summary.diffs,
        start.elapsed(),
        cfg.workers
    );
    Ok(report.is_clean())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(EXIT_DIFF),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}
