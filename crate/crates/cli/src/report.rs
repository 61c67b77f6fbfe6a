//! CSV layouts. Each file opens with a `# palqz <kind> v1` comment line.

use palqz_core::solver::EigenSource;
use palqz_core::SolveReport;

use crate::experiments::{BenchRow, StressRow, StressSummary};

pub const SCHEMA_VERSION: u32 = 1;

pub const SOLVE_HEADER: [&str; 10] = [
    "record",
    "index",
    "re",
    "im",
    "pair",
    "finite",
    "source",
    "move_count",
    "refine_count",
    "iterations",
];
pub const BENCH_HEADER: [&str; 7] = [
    "n",
    "seed",
    "backward_error",
    "move_count",
    "refine_count",
    "iterations",
    "error",
];
pub const STRESS_HEADER: [&str; 8] = [
    "variant",
    "sample",
    "g",
    "refinements",
    "capped",
    "initial_residual",
    "final_residual",
    "error",
];

fn writer(kind: &str) -> csv::Writer<Vec<u8>> {
    let head = format!("# palqz {kind} v{SCHEMA_VERSION}\n").into_bytes();
    csv::WriterBuilder::new().flexible(false).from_writer(head)
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    let bytes = w.into_inner().expect("in-memory csv writer");
    String::from_utf8(bytes).expect("csv output is utf-8")
}

fn num(x: f64) -> String {
    format!("{x:e}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

/// One `eig` row per eigenvalue and a closing `summary` row.
///
/// `pair` is the smaller index of the pair (the own index when self-paired).
/// Infinite eigenvalues leave `re`/`im` empty. The `backward_error` column is
/// present only when `Q` was accumulated.
pub fn solve_csv(r: &SolveReport) -> String {
    let with_be = r.backward_error.is_some();
    let mut w = writer("solve");
    let mut header: Vec<&str> = SOLVE_HEADER.to_vec();
    if with_be {
        header.push("backward_error");
    }
    w.write_record(&header).expect("csv write");
    for (i, e) in r.eigenvalues.iter().enumerate() {
        let pair = e.partner.map_or(i, |j| j.min(i));
        let (re, im, finite) = match e.value.value() {
            Some(z) => (num(z.re), num(z.im), "true"),
            None => (String::new(), String::new(), "false"),
        };
        let source = match e.source {
            EigenSource::Deflated => "deflated",
            EigenSource::Terminal => "terminal",
            EigenSource::Fallback => "fallback",
        };
        let mut rec = vec![
            "eig".to_string(),
            i.to_string(),
            re,
            im,
            pair.to_string(),
            finite.into(),
            source.into(),
        ];
        rec.extend([String::new(), String::new(), String::new()]);
        if with_be {
            rec.push(String::new());
        }
        w.write_record(&rec).expect("csv write");
    }
    let mut rec = vec!["summary".to_string()];
    rec.extend((0..6).map(|_| String::new()));
    rec.extend([
        r.stats.total_moves().to_string(),
        r.stats.total_refinements().to_string(),
        r.iterations.to_string(),
    ]);
    if with_be {
        rec.push(opt(r.backward_error));
    }
    w.write_record(&rec).expect("csv write");
    finish(w)
}

pub fn bench_csv(rows: &[BenchRow]) -> String {
    let mut w = writer("random-bench");
    w.write_record(BENCH_HEADER).expect("csv write");
    for r in rows {
        w.write_record([
            r.n.to_string(),
            r.seed.to_string(),
            opt(r.backward_error),
            r.move_count.to_string(),
            r.refine_count.to_string(),
            r.iterations.to_string(),
            r.error.unwrap_or("").to_string(),
        ])
        .expect("csv write");
    }
    finish(w)
}

pub fn stress_csv(rows: &[StressRow]) -> String {
    let mut w = writer("stress");
    w.write_record(STRESS_HEADER).expect("csv write");
    for r in rows {
        let res = |x: f64| if x.is_nan() { String::new() } else { num(x) };
        w.write_record([
            r.variant.name().to_string(),
            r.sample.to_string(),
            num(r.g),
            r.refinements.to_string(),
            r.capped.to_string(),
            res(r.initial_residual),
            res(r.final_residual),
            r.error.unwrap_or("").to_string(),
        ])
        .expect("csv write");
    }
    finish(w)
}

/// Plain-text table in the layout `g | IIe avg | IIe max | IIo avg | IIo max`.
pub fn stress_table(rows: &[StressSummary]) -> String {
    let mut s = format!(
        "{:<22} {:>12} {:>9} {:>12} {:>9} {:>8} {:>8}\n",
        "g", "IIe (avg)", "IIe (max)", "IIo (avg)", "IIo (max)", "capped", "refused"
    );
    for r in rows {
        s.push_str(&format!(
            "{:<22} {:>12.5} {:>9} {:>12.5} {:>9} {:>8} {:>8}\n",
            format!("[{:e}, {:e}]", r.lo, r.hi),
            r.iie.average,
            r.iie.max,
            r.iio.average,
            r.iio.max,
            r.iie.capped + r.iio.capped,
            r.iie.refused + r.iio.refused,
        ));
    }
    s
}
