//! Independent checks: reference eigensolvers, backward error, eigenvalue
//! matching and the rational subspace relation of a sweep.

mod charpoly;
mod matching;
mod qz;
mod subspace;

pub use charpoly::{aberth_roots, characteristic_polynomial, charpoly_eigenvalues, MAX_CHARPOLY_N};
pub use matching::match_eigensets;
pub use qz::qz_eigenvalues;
pub use subspace::{largest_principal_sine, subspace_check};

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::pencil::{HomogeneousValue, StructuredPencil};

/// Unstructured reference eigenvalues of a pencil (QZ path).
pub fn oracle_eigenvalues(p: &StructuredPencil) -> Result<Vec<HomogeneousValue>> {
    qz_eigenvalues(p.a(), p.b())
}

/// `max(‖Q^*AQ − S_A‖_F / ‖A‖_F, ‖Q^*BQ − S_B‖_F / ‖B‖_F)`.
pub fn backward_error(
    input: &StructuredPencil,
    q: &CMatrix,
    s_a: &CMatrix,
    s_b: &CMatrix,
) -> Result<f64> {
    let n = input.n();
    if q.nrows() != n || q.ncols() != n || s_a.nrows() != n || s_b.nrows() != n {
        return Err(Error::Shape("backward error operands differ in size"));
    }
    let rel = |m: &CMatrix, s: &CMatrix| {
        let d = q.adjoint().mul(m).mul(q).sub(s).frobenius_norm();
        let nm = m.frobenius_norm();
        if nm == 0.0 {
            d
        } else {
            d / nm
        }
    };
    Ok(rel(input.a(), s_a).max(rel(input.b(), s_b)))
}

/// `‖Q^*Q − I‖_max`.
pub fn orthogonality_defect(q: &CMatrix) -> f64 {
    q.adjoint()
        .mul(q)
        .sub(&CMatrix::identity(q.ncols()))
        .max_abs()
}
