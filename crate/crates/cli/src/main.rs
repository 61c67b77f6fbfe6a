use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use palqz::experiments::{parse_seeds, parse_sizes, BenchConfig, TABLE_INTERVALS};
use palqz::{cmd_random_bench, cmd_solve, cmd_stress, emit, load_pencil, CliError};
use palqz_core::StructureKind;

#[derive(Parser)]
#[command(
    name = "palqz",
    version,
    about = "Structured pole-swapping eigensolver for palindromic and alternating pencils"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Structure {
    Palindromic,
    Alternating,
}

impl From<Structure> for StructureKind {
    fn from(s: Structure) -> Self {
        match s {
            Structure::Palindromic => StructureKind::Palindromic,
            Structure::Alternating => StructureKind::Alternating,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Solve one pencil read from Matrix Market files.
    Solve {
        #[arg(long, value_enum, default_value = "palindromic")]
        structure: Structure,
        /// Matrix A.
        #[arg(long = "in")]
        input: PathBuf,
        /// Matrix B; defaults to A^* for palindromic input.
        #[arg(long = "in-b")]
        input_b: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 10.0)]
        tol_factor: f64,
        /// Accumulate Q and report the backward error.
        #[arg(long)]
        accumulate_q: bool,
    },
    /// Backward error and move counts on random pencils.
    RandomBench {
        #[arg(long, value_enum, default_value = "palindromic")]
        structure: Structure,
        /// Comma-separated sizes.
        #[arg(long, default_value = "50,100,200")]
        sizes: String,
        /// `N` for 0..N or `a..b`.
        #[arg(long, default_value = "10")]
        seeds: String,
        #[arg(long, default_value_t = 10.0)]
        tol_factor: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Refinement counts of the middle swaps on stress pencils.
    Stress {
        /// Lower end of the g interval; all four table intervals run when omitted.
        #[arg(long, requires = "g_hi")]
        g_lo: Option<f64>,
        #[arg(long, requires = "g_lo")]
        g_hi: Option<f64>,
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// First seed; sample i uses seed + i.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10.0)]
        tol_factor: f64,
        /// Per-sample CSV; the summary table always goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Solve {
            structure,
            input,
            input_b,
            out,
            tol_factor,
            accumulate_q,
        } => {
            let p = load_pencil(structure.into(), &input, input_b.as_deref())?;
            let (_, csv) = cmd_solve(&p, tol_factor, accumulate_q)?;
            emit(out.as_deref(), &csv)
        }
        Command::RandomBench {
            structure,
            sizes,
            seeds,
            tol_factor,
            out,
        } => {
            let cfg = BenchConfig {
                sizes: parse_sizes(&sizes)?,
                seeds: parse_seeds(&seeds)?,
                kind: structure.into(),
                tol_factor,
            };
            emit(out.as_deref(), &cmd_random_bench(&cfg))
        }
        Command::Stress {
            g_lo,
            g_hi,
            samples,
            seed,
            tol_factor,
            out,
        } => {
            let intervals = match (g_lo, g_hi) {
                (Some(lo), Some(hi)) => vec![(lo, hi)],
                _ => TABLE_INTERVALS.to_vec(),
            };
            let (csv, table, _) = cmd_stress(&intervals, samples, seed, tol_factor)?;
            if let Some(path) = out.as_deref() {
                emit(Some(path), &csv)?;
            }
            emit(None, &table)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}: {e}", e.name());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
