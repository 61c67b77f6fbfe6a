//! Dense complex Matrix Market files (`array complex general`).
//!
//! Entries are stored column by column, one `re im` pair per line, with 17
//! significant digits so that finite doubles survive a round trip exactly.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use palqz_core::{CMatrix, Complex64};

use crate::CliError;

pub const HEADER: &str = "%%MatrixMarket matrix array complex general";

pub fn to_string(m: &CMatrix) -> String {
    let mut s = String::with_capacity(48 * m.nrows() * m.ncols() + 64);
    s.push_str(HEADER);
    s.push('\n');
    let _ = writeln!(s, "{} {}", m.nrows(), m.ncols());
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            let z = m[(i, j)];
            let _ = writeln!(s, "{:.16e} {:.16e}", z.re, z.im);
        }
    }
    s
}

pub fn write_matrix(path: &Path, m: &CMatrix) -> Result<(), CliError> {
    std::fs::write(path, to_string(m)).map_err(|source| CliError::Write {
        path: path.to_path_buf(),
        source,
    })
}

pub fn read_matrix(path: &Path) -> Result<CMatrix, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    parse(&text, path)
}

/// Parses and checks the matrix is square.
pub fn parse(text: &str, path: &Path) -> Result<CMatrix, CliError> {
    let err = |line: usize, column: usize, msg: String| CliError::Parse {
        path: PathBuf::from(path),
        line,
        column,
        msg,
    };
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    let Some((_, head)) = lines.next() else {
        return Err(err(1, 1, format!("empty file, expected header `{HEADER}`")));
    };
    let words: Vec<String> = head
        .split_whitespace()
        .map(str::to_ascii_lowercase)
        .collect();
    let expect = ["%%matrixmarket", "matrix", "array", "complex", "general"];
    if words.len() != expect.len() || words.iter().zip(expect).any(|(w, e)| w != e) {
        return Err(err(1, 1, format!("expected header `{HEADER}`")));
    }

    // tokens with their positions, comment lines skipped
    let tokens: Vec<(usize, usize, &str)> = lines
        .filter(|(_, l)| !l.trim_start().starts_with('%'))
        .flat_map(|(no, l)| tokens_of(l).map(move |(col, t)| (no, col, t)))
        .collect();
    let mut tokens = tokens.into_iter();
    let mut last = (1, 1);
    let mut next = |what: &dyn Fn() -> String| match tokens.next() {
        Some(t) => {
            last = (t.0, t.1);
            Ok(t)
        }
        None => Err(err(last.0, last.1, format!("missing {}", what()))),
    };
    let mut dim = |what: &'static str| -> Result<usize, CliError> {
        let (no, col, t) = next(&|| what.to_string())?;
        t.parse::<usize>()
            .map_err(|_| err(no, col, format!("expected {what}, found `{t}`")))
    };
    let rows = dim("row count")?;
    let cols = dim("column count")?;

    let mut data = vec![Complex64::new(0.0, 0.0); rows * cols];
    for k in 0..rows * cols {
        let mut part = |which: &str| -> Result<f64, CliError> {
            let (no, col, t) =
                next(&|| format!("{which} part of entry {} of {}", k + 1, rows * cols))?;
            let v: f64 = t.parse().map_err(|_| {
                err(
                    no,
                    col,
                    format!("expected {which} part of entry {}, found `{t}`", k + 1),
                )
            })?;
            if !v.is_finite() {
                return Err(err(no, col, format!("non-finite value `{t}`")));
            }
            Ok(v)
        };
        let re = part("real")?;
        let im = part("imaginary")?;
        data[(k % rows) * cols + k / rows] = Complex64::new(re, im);
    }
    if let Ok((no, col, t)) = next(&String::new) {
        return Err(err(no, col, format!("unexpected trailing token `{t}`")));
    }
    if rows != cols {
        return Err(CliError::Shape(format!(
            "{}: matrix is {rows}x{cols}, expected square",
            path.display()
        )));
    }
    Ok(CMatrix::from_vec(rows, cols, data)?)
}

fn tokens_of(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace()
        .map(move |t| (t.as_ptr() as usize - line.as_ptr() as usize + 1, t))
}
