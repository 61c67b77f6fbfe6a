//! Batch experiments: random pencils and middle-swap stress tests.

use std::ops::Range;

use palqz_core::moves::{MoveSite, SwapControl, Window};
use palqz_core::pencil::{gen_random_palindromic, gen_stress_2x2, gen_stress_3x3};
use palqz_core::{solve, SolverOptions, StructureKind, StructuredPencil};
use rayon::prelude::*;

use crate::error::error_name;
use crate::CliError;

/// Default stress intervals for `g`, largest gaps last.
pub const TABLE_INTERVALS: [(f64, f64); 4] =
    [(1e-15, 1e-12), (1e-12, 1e-9), (1e-9, 1e0), (1e0, 1e15)];

/// `"N"` is `0..N`, `"a..b"` is half-open.
pub fn parse_seeds(s: &str) -> Result<Range<u64>, CliError> {
    let bad = || CliError::Usage(format!("invalid seed range `{s}` (expected N or a..b)"));
    let r = match s.split_once("..") {
        Some((a, b)) => {
            a.trim().parse().map_err(|_| bad())?..b.trim().parse().map_err(|_| bad())?
        }
        None => 0..s.trim().parse().map_err(|_| bad())?,
    };
    if r.is_empty() {
        return Err(CliError::Usage(format!("seed range `{s}` is empty")));
    }
    Ok(r)
}

pub fn parse_sizes(s: &str) -> Result<Vec<usize>, CliError> {
    let sizes = s
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| CliError::Usage(format!("invalid size `{t}`")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if sizes.iter().any(|&n| n < 2) {
        return Err(CliError::Usage("sizes must be at least 2".into()));
    }
    Ok(sizes)
}

/// Palindromic instance for `seed`, or its Cayley image.
pub fn random_pencil(kind: StructureKind, n: usize, seed: u64) -> StructuredPencil {
    let p = gen_random_palindromic(n, seed);
    match kind {
        StructureKind::Palindromic => p,
        StructureKind::Alternating => p.cayley().expect("cayley of a palindromic pencil"),
    }
}

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub seeds: Range<u64>,
    pub kind: StructureKind,
    pub tol_factor: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub seed: u64,
    pub backward_error: Option<f64>,
    pub move_count: usize,
    pub refine_count: usize,
    pub iterations: usize,
    pub error: Option<&'static str>,
}

pub fn solver_options(tol_factor: f64, accumulate_q: bool) -> SolverOptions {
    let mut o = SolverOptions::default();
    o.swap.tol_factor = tol_factor;
    o.accumulate_q = accumulate_q;
    o
}

/// One row per `(n, seed)` in input order; failures land in the `error` field.
pub fn random_bench(cfg: &BenchConfig) -> Vec<BenchRow> {
    let jobs: Vec<(usize, u64)> = cfg
        .sizes
        .iter()
        .flat_map(|&n| cfg.seeds.clone().map(move |s| (n, s)))
        .collect();
    let opts = solver_options(cfg.tol_factor, true);
    jobs.par_iter()
        .map(|&(n, seed)| {
            let p = random_pencil(cfg.kind, n, seed);
            match solve(&p, &opts) {
                Ok(r) => BenchRow {
                    n,
                    seed,
                    backward_error: r.backward_error,
                    move_count: r.stats.total_moves(),
                    refine_count: r.stats.total_refinements(),
                    iterations: r.iterations,
                    error: None,
                },
                Err(e) => BenchRow {
                    n,
                    seed,
                    backward_error: None,
                    move_count: 0,
                    refine_count: 0,
                    iterations: 0,
                    error: Some(error_name(&e)),
                },
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// 2×2 middle block, odd `n`.
    IIo,
    /// 3×3 middle block, even `n`.
    IIe,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::IIo => "IIo",
            Variant::IIe => "IIe",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StressRow {
    pub variant: Variant,
    pub sample: usize,
    pub g: f64,
    pub refinements: usize,
    /// Hit the refinement cap without reaching tolerance.
    pub capped: bool,
    pub initial_residual: f64,
    pub final_residual: f64,
    pub error: Option<&'static str>,
}

#[derive(Debug, Clone)]
pub struct StressConfig {
    pub lo: f64,
    pub hi: f64,
    pub samples: usize,
    pub seed: u64,
    pub control: SwapControl,
}

/// `g` for sample `i`: a stratified grid on `[log lo, log hi]`.
pub fn stress_g(lo: f64, hi: f64, samples: usize, i: usize) -> f64 {
    let (a, b) = (lo.log10(), hi.log10());
    10f64.powf(a + (b - a) * (i as f64 + 0.5) / samples as f64)
}

fn stress_one(
    variant: Variant,
    g: f64,
    seed: u64,
    sample: usize,
    control: &SwapControl,
) -> StressRow {
    let mut p = match variant {
        Variant::IIo => gen_stress_2x2(g, seed),
        Variant::IIe => gen_stress_3x3(g, seed),
    };
    let n = p.n();
    let mut row = StressRow {
        variant,
        sample,
        g,
        refinements: 0,
        capped: false,
        initial_residual: f64::NAN,
        final_residual: f64::NAN,
        error: None,
    };
    match MoveSite::new(&mut p, Window::full(n), None).middle_swap(control) {
        Ok(out) => {
            row.refinements = out.refinements;
            row.capped = !out.converged;
            row.initial_residual = out.initial.relative();
            row.final_residual = out.residual.relative();
        }
        Err(e) => row.error = Some(error_name(&e)),
    }
    row
}

/// Both variants for every sample, IIo rows first.
pub fn stress(cfg: &StressConfig) -> Vec<StressRow> {
    let jobs: Vec<(Variant, usize)> = [Variant::IIo, Variant::IIe]
        .into_iter()
        .flat_map(|v| (0..cfg.samples).map(move |i| (v, i)))
        .collect();
    jobs.par_iter()
        .map(|&(v, i)| {
            let g = stress_g(cfg.lo, cfg.hi, cfg.samples, i);
            stress_one(v, g, cfg.seed.wrapping_add(i as u64), i, &cfg.control)
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct VariantSummary {
    pub average: f64,
    pub max: usize,
    /// Runs that hit the refinement cap.
    pub capped: usize,
    /// Runs where the swap was refused (coincident poles and the like).
    pub refused: usize,
    pub samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StressSummary {
    pub lo: f64,
    pub hi: f64,
    pub iie: VariantSummary,
    pub iio: VariantSummary,
}

/// Averages are over the swaps that were attempted, refusals excluded.
pub fn summarize(lo: f64, hi: f64, rows: &[StressRow]) -> StressSummary {
    let one = |v: Variant| {
        let mut s = VariantSummary::default();
        let mut total = 0usize;
        let mut done = 0usize;
        for r in rows.iter().filter(|r| r.variant == v) {
            s.samples += 1;
            if r.error.is_some() {
                s.refused += 1;
                continue;
            }
            done += 1;
            total += r.refinements;
            s.max = s.max.max(r.refinements);
            s.capped += r.capped as usize;
        }
        s.average = if done == 0 {
            0.0
        } else {
            total as f64 / done as f64
        };
        s
    };
    StressSummary {
        lo,
        hi,
        iie: one(Variant::IIe),
        iio: one(Variant::IIo),
    }
}
