use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("shape error: {0}")]
    Shape(&'static str),
    #[error("structure error: {0}")]
    Structure(&'static str),
    #[error("index {index} out of range (valid {min}..={max})")]
    Index {
        index: usize,
        min: usize,
        max: usize,
    },
    #[error("pole {0} is (0, 0)")]
    SingularPole(usize),
    #[error("shift reproduces the pole it replaces")]
    DegenerateShift,
    #[error("poles coincide (chordal gap below threshold)")]
    CoincidentPoles,
    #[error("refinement did not reach tolerance after {0} steps")]
    RefinementLimit(usize),
    #[error("middle swap is only valid for n {0} parity")]
    Parity(&'static str),
    #[error("move II index {0} is not an off-middle pole")]
    MiddleIndex(usize),
    #[error("cannot guard shift: {0}")]
    Guard(&'static str),
    #[error("degenerate pencil: {0}")]
    DegeneratePencil(&'static str),
    #[error("no deflation in window of size {window} after {sweeps} sweeps")]
    Convergence { window: usize, sweeps: usize },
    #[error("reference solver failed: {0}")]
    Oracle(&'static str),
    #[error("eigenvalue lists differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("shifted matrix is singular")]
    Singular,
}
