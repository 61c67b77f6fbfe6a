//! File formats, experiment harnesses and subcommand bodies for the `palqz` binary.

pub mod error;
pub mod experiments;
pub mod mtx;
pub mod report;

use std::path::Path;

use palqz_core::moves::SwapControl;
use palqz_core::{solve, CMatrix, SolveReport, StructureKind, StructuredPencil};

pub use error::CliError;
use experiments::{BenchConfig, StressConfig, StressSummary};

/// Builds the pencil for `solve`: a palindromic `B` defaults to `A^*`.
pub fn load_pencil(
    kind: StructureKind,
    a: &Path,
    b: Option<&Path>,
) -> Result<StructuredPencil, CliError> {
    let a = mtx::read_matrix(a)?;
    let b = match b {
        Some(path) => Some(mtx::read_matrix(path)?),
        None => None,
    };
    pencil_from(kind, a, b)
}

pub fn pencil_from(
    kind: StructureKind,
    a: CMatrix,
    b: Option<CMatrix>,
) -> Result<StructuredPencil, CliError> {
    match (kind, b) {
        (StructureKind::Palindromic, None) => Ok(StructuredPencil::palindromic(a)?),
        (kind, Some(b)) => {
            if b.nrows() != a.nrows() {
                return Err(CliError::Shape(format!(
                    "A is {0}x{0} but B is {1}x{1}",
                    a.nrows(),
                    b.nrows()
                )));
            }
            Ok(StructuredPencil::new_structured_pair(a, b, kind)?)
        }
        (StructureKind::Alternating, None) => {
            Err(CliError::Usage("alternating input needs --in-b".into()))
        }
    }
}

pub fn cmd_solve(
    p: &StructuredPencil,
    tol_factor: f64,
    accumulate_q: bool,
) -> Result<(SolveReport, String), CliError> {
    let r = solve(p, &experiments::solver_options(tol_factor, accumulate_q))?;
    let csv = report::solve_csv(&r);
    Ok((r, csv))
}

pub fn cmd_random_bench(cfg: &BenchConfig) -> String {
    report::bench_csv(&experiments::random_bench(cfg))
}

/// CSV rows for every interval plus the summary table.
pub fn cmd_stress(
    intervals: &[(f64, f64)],
    samples: usize,
    seed: u64,
    tol_factor: f64,
) -> Result<(String, String, Vec<StressSummary>), CliError> {
    if samples == 0 {
        return Err(CliError::Usage("--samples must be at least 1".into()));
    }
    let mut rows = Vec::new();
    let mut summaries = Vec::new();
    for &(lo, hi) in intervals {
        if !(lo > 0.0 && lo < hi && hi.is_finite()) {
            return Err(CliError::Usage(format!("invalid g interval [{lo}, {hi}]")));
        }
        let control = SwapControl {
            tol_factor,
            ..SwapControl::default()
        };
        let part = experiments::stress(&StressConfig {
            lo,
            hi,
            samples,
            seed,
            control,
        });
        summaries.push(experiments::summarize(lo, hi, &part));
        rows.extend(part);
    }
    Ok((
        report::stress_csv(&rows),
        report::stress_table(&summaries),
        summaries,
    ))
}

/// Writes `text` to `out`, or stdout when absent.
pub fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Write {
            path: path.to_path_buf(),
            source,
        }),
        None => {
            use std::io::Write;
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|source| CliError::Write {
                    path: "<stdout>".into(),
                    source,
                })
        }
    }
}
