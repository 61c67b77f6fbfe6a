use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::pencil::{StructureKind, StructuredPencil};

/// Core transformation `G = [[c, -conj(s)], [s, conj(c)]]` acting on
/// rows/columns `index` and `index + 1` (0-based).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoreTransformation {
    pub index: usize,
    pub c: Complex64,
    pub s: Complex64,
}

impl CoreTransformation {
    pub fn identity(index: usize) -> Self {
        CoreTransformation {
            index,
            c: Complex64::new(1.0, 0.0),
            s: Complex64::new(0.0, 0.0),
        }
    }

    /// `|c|² + |s|² − 1`.
    pub fn unitarity_defect(&self) -> f64 {
        (self.c.norm_sqr() + self.s.norm_sqr() - 1.0).abs()
    }

    /// `G^* (u, v)`.
    pub fn apply_adjoint(&self, u: Complex64, v: Complex64) -> (Complex64, Complex64) {
        (
            self.c.conj() * u + self.s.conj() * v,
            -self.s * u + self.c * v,
        )
    }

    /// The 2×2 block as a row-major array.
    pub fn block(&self) -> [[Complex64; 2]; 2] {
        [[self.c, -self.s.conj()], [self.s, self.c.conj()]]
    }
}

/// Core whose first column is `v / ‖v‖`.
///
/// Real `v[1]` gives a real `s`; the division is by the real norm only.
pub fn rotation_from_vector(index: usize, v: [Complex64; 2]) -> Result<CoreTransformation> {
    let m = v[0].norm().max(v[1].norm());
    if m == 0.0 || !m.is_finite() {
        return Err(Error::DegeneratePencil(
            "rotation from a zero or non-finite vector",
        ));
    }
    let (a, b) = (v[0] / m, v[1] / m);
    let r = libm::hypot(a.norm(), b.norm());
    Ok(CoreTransformation {
        index,
        c: a / r,
        s: b / r,
    })
}

/// Core `G` with `(G^* v)[0] = 0`, i.e. second column parallel to `v`.
pub(crate) fn annihilator(index: usize, v: [Complex64; 2]) -> Result<CoreTransformation> {
    rotation_from_vector(index, [v[1].conj(), -v[0].conj()])
}

#[inline]
fn col_op(m: &mut CMatrix, j: usize, start: usize, g: &CoreTransformation) {
    let n = m.nrows();
    let (c, s) = (g.c, g.s);
    let (g01, g11) = (-s.conj(), c.conj());
    for r in start..n {
        let x = m[(r, j)];
        let y = m[(r, j + 1)];
        m[(r, j)] = c * x + s * y;
        m[(r, j + 1)] = g01 * x + g11 * y;
    }
}

#[inline]
fn row_op(m: &mut CMatrix, j: usize, start: usize, g: &CoreTransformation) {
    let n = m.ncols();
    let (cc, sc) = (g.c.conj(), g.s.conj());
    let (h10, h11) = ((-g.s.conj()).conj(), g.c.conj().conj());
    for col in start..n {
        let r0 = m[(j, col)];
        let r1 = m[(j + 1, col)];
        m[(j, col)] = cc * r0 + sc * r1;
        m[(j + 1, col)] = h10 * r0 + h11 * r1;
    }
}

/// `A ← G^* A G`, `B ← G^* B G`, and `Q ← Q G` when given.
///
/// Entries that are structurally zero in both affected rows/columns are skipped.
/// For palindromic pencils the `B` update mirrors the `A` update operation by
/// operation, so `B = A^*` survives bitwise.
pub(crate) fn apply_core(
    p: &mut StructuredPencil,
    g: &CoreTransformation,
    q: Option<&mut CMatrix>,
) {
    let n = p.n();
    let j = g.index;
    debug_assert!(j + 1 < n);
    let start = n.saturating_sub(j + 4);
    let kind = p.kind();
    let (a, b) = p.parts_mut();
    col_op(a, j, start, g);
    row_op(a, j, start, g);
    match kind {
        StructureKind::Palindromic => {
            row_op(b, j, start, g);
            col_op(b, j, start, g);
        }
        StructureKind::Alternating => {
            col_op(b, j, start, g);
            row_op(b, j, start, g);
            // The intersection block loses its symmetry to rounding; restore it.
            symmetrize(a, j, 1.0);
            symmetrize(b, j, -1.0);
        }
    }
    if let Some(q) = q {
        col_op(q, j, 0, g);
    }
}

fn symmetrize(m: &mut CMatrix, j: usize, sign: f64) {
    let off = (m[(j, j + 1)] + m[(j + 1, j)].conj() * sign) * 0.5;
    m[(j, j + 1)] = off;
    m[(j + 1, j)] = off.conj() * sign;
    for i in [j, j + 1] {
        let d = m[(i, i)];
        m[(i, i)] = if sign > 0.0 {
            Complex64::new(d.re, 0.0)
        } else {
            Complex64::new(0.0, d.im)
        };
    }
}

/// One unitary congruence by a core transformation.
pub fn apply_congruence(p: &mut StructuredPencil, g: &CoreTransformation) -> Result<()> {
    let n = p.n();
    if n < 2 || g.index + 1 >= n {
        return Err(Error::Index {
            index: g.index,
            min: 0,
            max: n.saturating_sub(2),
        });
    }
    apply_core(p, g, None);
    Ok(())
}
