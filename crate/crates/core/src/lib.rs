//! Pole-swapping eigensolvers for palindromic and alternating anti-Hessenberg pencils.
//!
//! A pencil `(A, B)` is palindromic when `B = A^*` and alternating when `A` is
//! Hermitian and `B` skew-Hermitian. Eigenvalues come in pairs `(λ, 1/conj(λ))`
//! resp. `(λ, -conj(λ))`; the solver keeps the structure through every
//! unitary congruence so reported pairs satisfy the relation exactly.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod error;
pub mod matrix;
pub mod moves;
pub mod pencil;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::CMatrix;
pub use num_complex::Complex64;
pub use pencil::{HomogeneousValue, StructureKind, StructuredPencil};
pub use solver::{solve, SolveReport, SolverOptions};
