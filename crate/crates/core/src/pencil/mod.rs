//! Structured anti-Hessenberg pencils and their poles.

mod generate;
mod homogeneous;

pub use generate::{
    gen_random_alternating, gen_random_palindromic, gen_stress_2x2, gen_stress_3x3, stress_entry,
    stress_pencil_2x2, stress_pencil_3x3,
};
pub use homogeneous::HomogeneousValue;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StructureKind {
    /// `B = A^*`
    Palindromic,
    /// `A = A^*`, `B = -B^*`
    Alternating,
}

/// True when 0-based `(i, j)` lies in the zero triangle of an `n × n`
/// anti-Hessenberg matrix (above the first anti-subdiagonal).
#[inline]
pub fn in_zero_triangle(n: usize, i: usize, j: usize) -> bool {
    i + j + 2 < n
}

/// Pencil `(A, B)` of anti-Hessenberg matrices with one of the two structures.
#[derive(Debug, Clone)]
pub struct StructuredPencil {
    a: CMatrix,
    b: CMatrix,
    kind: StructureKind,
}

/// Violations measured by [`StructuredPencil::validate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PencilReport {
    /// Largest entry in the zero triangle of `A` or `B`.
    pub max_shape_violation: f64,
    /// Largest entrywise departure from `B = A^*` (resp. Hermitian/skew-Hermitian).
    pub max_structure_violation: f64,
    /// Largest chordal distance between `σ_k` and the companion of `σ_{n-k}`.
    pub pole_symmetry_violation: f64,
    /// For even n: chordal distance of the middle pole from its own companion.
    pub middle_pole_violation: f64,
    pub norm_a: f64,
    pub norm_b: f64,
}

impl PencilReport {
    /// All violations within `factor · ε · max(‖A‖_F, ‖B‖_F)`; pole checks are chordal
    /// and use `factor · ε` directly.
    pub fn is_valid(&self, factor: f64) -> bool {
        let tol = factor * f64::EPSILON * self.norm_a.max(self.norm_b);
        self.max_shape_violation <= tol
            && self.max_structure_violation <= tol
            && self.pole_symmetry_violation <= factor * f64::EPSILON * 1e3
            && self.middle_pole_violation <= factor * f64::EPSILON * 1e3
    }
}

impl StructuredPencil {
    /// Palindromic pencil `(A, A^*)`.
    pub fn palindromic(a: CMatrix) -> Result<Self> {
        let b = a.adjoint();
        Self::new_structured_pair(a, b, StructureKind::Palindromic)
    }

    /// Builds `B` from `A` for the palindromic structure. Alternating pencils need both
    /// matrices, see [`Self::new_structured_pair`].
    pub fn new_structured(a: CMatrix, kind: StructureKind) -> Result<Self> {
        match kind {
            StructureKind::Palindromic => Self::palindromic(a),
            StructureKind::Alternating => {
                Err(Error::Structure("alternating pencils need both A and B"))
            }
        }
    }

    /// Checks shape and structure within `10 ε ‖·‖_F`.
    pub fn new_structured_pair(a: CMatrix, b: CMatrix, kind: StructureKind) -> Result<Self> {
        if !a.is_square() || !b.is_square() || a.nrows() != b.nrows() {
            return Err(Error::Shape("A and B must be square of equal size"));
        }
        let p = StructuredPencil { a, b, kind };
        let r = p.validate();
        let tol = 10.0 * f64::EPSILON * r.norm_a.max(r.norm_b);
        if r.max_shape_violation > tol {
            return Err(Error::Shape("not anti-Hessenberg"));
        }
        if r.max_structure_violation > tol {
            return Err(Error::Structure(match kind {
                StructureKind::Palindromic => "B is not A^*",
                StructureKind::Alternating => "A not Hermitian or B not skew-Hermitian",
            }));
        }
        Ok(p)
    }

    /// No checks at all. Meant for tests that corrupt a pencil on purpose.
    pub fn from_raw_parts(a: CMatrix, b: CMatrix, kind: StructureKind) -> Self {
        assert!(a.is_square() && b.is_square() && a.nrows() == b.nrows());
        StructuredPencil { a, b, kind }
    }

    pub fn n(&self) -> usize {
        self.a.nrows()
    }

    pub fn kind(&self) -> StructureKind {
        self.kind
    }

    pub fn a(&self) -> &CMatrix {
        &self.a
    }

    pub fn b(&self) -> &CMatrix {
        &self.b
    }

    pub fn into_parts(self) -> (CMatrix, CMatrix) {
        (self.a, self.b)
    }

    pub(crate) fn parts_mut(&mut self) -> (&mut CMatrix, &mut CMatrix) {
        (&mut self.a, &mut self.b)
    }

    /// Pole `σ_k = (a_{n-k,k}, b_{n-k,k})`, `k` 1-based in `1..n`.
    pub fn pole_at(&self, k: usize) -> Result<HomogeneousValue> {
        let n = self.n();
        if k == 0 || k >= n {
            return Err(Error::Index {
                index: k,
                min: 1,
                max: n.saturating_sub(1),
            });
        }
        let (i, j) = (n - k - 1, k - 1);
        HomogeneousValue::new(self.a[(i, j)], self.b[(i, j)]).map_err(|_| Error::SingularPole(k))
    }

    pub fn poles(&self) -> Result<alloc::vec::Vec<HomogeneousValue>> {
        (1..self.n()).map(|k| self.pole_at(k)).collect()
    }

    pub fn validate(&self) -> PencilReport {
        let n = self.n();
        let (a, b) = (&self.a, &self.b);
        let mut shape: f64 = 0.0;
        let mut structure: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                if in_zero_triangle(n, i, j) {
                    shape = shape.max(a[(i, j)].norm()).max(b[(i, j)].norm());
                }
                let d = match self.kind {
                    StructureKind::Palindromic => (a[(i, j)] - b[(j, i)].conj()).norm(),
                    StructureKind::Alternating => (a[(i, j)] - a[(j, i)].conj())
                        .norm()
                        .max((b[(i, j)] + b[(j, i)].conj()).norm()),
                };
                structure = structure.max(d);
            }
        }
        let mut sym: f64 = 0.0;
        let mut mid: f64 = 0.0;
        let pole = |k: usize| {
            let (i, j) = (n - k - 1, k - 1);
            HomogeneousValue {
                alpha: a[(i, j)],
                beta: b[(i, j)],
            }
        };
        let zero = Complex64::new(0.0, 0.0);
        for k in 1..n {
            let s = pole(k);
            let t = pole(n - k);
            if (s.alpha == zero && s.beta == zero) || (t.alpha == zero && t.beta == zero) {
                sym = 1.0;
                continue;
            }
            sym = sym.max(s.chordal_distance(&t.companion(self.kind)));
        }
        if n >= 2 && n.is_multiple_of(2) {
            let s = pole(n / 2);
            if !(s.alpha == zero && s.beta == zero) {
                mid = s.self_pair_distance(self.kind);
            }
        }
        PencilReport {
            max_shape_violation: shape,
            max_structure_violation: structure,
            pole_symmetry_violation: sym,
            middle_pole_violation: mid,
            norm_a: a.frobenius_norm(),
            norm_b: b.frobenius_norm(),
        }
    }

    /// `(A, B) ↦ (A + B, A − B)`: palindromic becomes alternating, eigenvalues
    /// map by `μ ↦ (μ + 1)/(μ − 1)`.
    pub fn cayley(&self) -> Result<StructuredPencil> {
        if self.kind != StructureKind::Palindromic {
            return Err(Error::Structure("cayley expects a palindromic pencil"));
        }
        let a = self.a.add(&self.b);
        let b = self.a.sub(&self.b);
        StructuredPencil::new_structured_pair(a, b, StructureKind::Alternating)
    }
}

/// Eigenvalue image under the Cayley map used by [`StructuredPencil::cayley`].
pub fn cayley_value(mu: &HomogeneousValue) -> HomogeneousValue {
    HomogeneousValue {
        alpha: mu.alpha + mu.beta,
        beta: mu.alpha - mu.beta,
    }
}
