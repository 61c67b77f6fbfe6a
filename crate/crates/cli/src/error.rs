use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}:{column}: {msg}")]
    Parse {
        path: PathBuf,
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("{0}")]
    Usage(String),
    #[error("cannot read {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    Write {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Shape(String),
    #[error(transparent)]
    Solver(#[from] palqz_core::Error),
}

impl CliError {
    /// 1 parse, 2 shape, 3 solver failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. }
            | CliError::Usage(_)
            | CliError::Read { .. }
            | CliError::Write { .. } => 1,
            CliError::Shape(_) => 2,
            CliError::Solver(e) => match e {
                palqz_core::Error::Shape(_) | palqz_core::Error::Structure(_) => 2,
                _ => 3,
            },
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CliError::Parse { .. } => "ParseError",
            CliError::Usage(_) => "UsageError",
            CliError::Read { .. } | CliError::Write { .. } => "IoError",
            CliError::Shape(_) => "ShapeError",
            CliError::Solver(e) => error_name(e),
        }
    }
}

pub fn error_name(e: &palqz_core::Error) -> &'static str {
    use palqz_core::Error::*;
    match e {
        Shape(_) | LengthMismatch(..) => "ShapeError",
        Structure(_) => "StructureError",
        Index { .. } | MiddleIndex(_) | Parity(_) => "IndexError",
        SingularPole(_) => "SingularPoleError",
        DegenerateShift => "DegenerateShiftError",
        CoincidentPoles => "CoincidentPolesError",
        RefinementLimit(_) => "RefinementLimitError",
        Guard(_) => "GuardError",
        DegeneratePencil(_) => "DegeneratePencilError",
        Convergence { .. } => "ConvergenceError",
        Oracle(_) => "OracleError",
        Singular => "SingularShiftError",
    }
}
