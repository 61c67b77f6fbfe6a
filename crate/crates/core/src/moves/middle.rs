//! Middle swaps and their refinement.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use super::cross::{check_separated, solve_2x2};
use super::rotation::{rotation_from_vector, CoreTransformation};
use super::{inv_scale, max_abs, MoveSite};
use crate::error::Result;
use crate::matrix::CMatrix;

fn block<const K: usize>(m: &CMatrix, c: usize) -> [[Complex64; K]; K] {
    core::array::from_fn(|i| core::array::from_fn(|j| m[(c + i, c + j)]))
}

fn scaled<const K: usize>(mut b: [[Complex64; K]; K]) -> [[Complex64; K]; K] {
    let s = inv_scale(b.iter().map(|r| max_abs(r)).fold(0.0, f64::max));
    for r in b.iter_mut() {
        for z in r.iter_mut() {
            *z *= s;
        }
    }
    b
}

fn blocks<const K: usize>(
    site: &MoveSite<'_>,
) -> (usize, [[Complex64; K]; K], [[Complex64; K]; K]) {
    let c = site.middle_corner();
    let a = scaled(block::<K>(site.pencil.a(), c));
    let b = scaled(block::<K>(site.pencil.b(), c));
    (c, a, b)
}

/// Odd window: the block `[[·, α₁], [α₂, α₂₁]]` has poles `α₁/β₁` (upper right)
/// and `α₂/β₂` (lower left). One core swaps them.
pub(super) fn swap_odd(site: &mut MoveSite<'_>) -> Result<Vec<CoreTransformation>> {
    let (c, a, b) = blocks::<2>(site);
    let (a1, a2, a21) = (a[0][1], a[1][0], a[1][1]);
    let (b1, b2, b21) = (b[0][1], b[1][0], b[1][1]);
    check_separated(a1, a2, b1, b2)?;
    let g = rotation_from_vector(c, [b1 * a21 - a1 * b21, a1 * b2 - b1 * a2])?;
    site.apply(&g);
    Ok(vec![g])
}

/// QR of the 3×3 lower-left unit triangular helper `[[1,0,0],[f1,1,0],[f2,h2,1]]`
/// expressed through its first two columns. Cores are returned in application order.
fn three_core_qr(
    c: usize,
    f: [Complex64; 3],
    h: [Complex64; 3],
) -> Result<[CoreTransformation; 3]> {
    let g1 = rotation_from_vector(c + 1, [f[1], f[2]])?;
    let (f1, _) = g1.apply_adjoint(f[1], f[2]);
    let g2 = rotation_from_vector(c, [f[0], f1])?;
    let (h1, h2) = g1.apply_adjoint(h[1], h[2]);
    let (_, h1) = g2.apply_adjoint(h[0], h1);
    let g3 = if h1 == Complex64::new(0.0, 0.0) && h2 == Complex64::new(0.0, 0.0) {
        CoreTransformation::identity(c + 1)
    } else {
        rotation_from_vector(c + 1, [h1, h2])?
    };
    Ok([g1, g2, g3])
}

/// Even window, block
/// `[[·, ·, α₁], [·, α₂, α₂₁], [α₃, α₃₂, α₃₁]]`: swaps `α₁/β₁` and `α₃/β₃`
/// around the middle pole `α₂/β₂`.
pub(super) fn swap_even(site: &mut MoveSite<'_>) -> Result<Vec<CoreTransformation>> {
    let (c, a, b) = blocks::<3>(site);
    let (a1, a2, a21, a3, a32, a31) = (a[0][2], a[1][1], a[1][2], a[2][0], a[2][1], a[2][2]);
    let (b1, b2, b21, b3, b32, b31) = (b[0][2], b[1][1], b[1][2], b[2][0], b[2][1], b[2][2]);
    check_separated(a1, a2, b1, b2)?;
    check_separated(a2, a3, b2, b3)?;
    check_separated(a1, a3, b1, b3)?;
    // x21 = n21/d1, x32 = n32/d2, x31 = (β₁ρ_A − α₁ρ_B)/d3 with the right-hand side
    // of the outer system shifted by x21; columns are rescaled to avoid divisions.
    let d1 = a1 * b2 - b1 * a2;
    let n21 = b1 * a21 - a1 * b21;
    let d2 = a2 * b3 - b2 * a3;
    let n32 = b2 * a32 - a2 * b32;
    let d3 = a1 * b3 - b1 * a3;
    let n31 = b1 * (a31 * d1 + a32 * n21) - a1 * (b31 * d1 + b32 * n21);
    let f = [n31, n21 * d3, d1 * d3];
    let h = [n32, d2, Complex64::new(0.0, 0.0)];
    let s = inv_scale(max_abs(&f));
    let t = inv_scale(max_abs(&h));
    let cores = three_core_qr(c, f.map(|z| z * s), h.map(|z| z * t))?;
    for g in &cores {
        site.apply(g);
    }
    Ok(cores.to_vec())
}

/// One Newton step on `[[ε, α₂], [α₁, α₁₂]]`: the core with first column
/// `∝ (1, x)`, `x = (β₁ε − α₁η)/(α₁β₂ − β₁α₂)`, removes `ε` to first order.
pub(super) fn refine_odd(site: &mut MoveSite<'_>) -> Result<CoreTransformation> {
    let (c, a, b) = blocks::<2>(site);
    let (e, a2, a1) = (a[0][0], a[0][1], a[1][0]);
    let (eta, b2, b1) = (b[0][0], b[0][1], b[1][0]);
    check_separated(a1, a2, b1, b2)?;
    let g = rotation_from_vector(c, [a1 * b2 - b1 * a2, b1 * e - a1 * eta])?;
    site.apply(&g);
    Ok(g)
}

/// One Newton step on the even block: three linearised equations for the
/// unit lower triangular `X` with `X^* M X` clear in `(0,0)`, `(0,1)`, `(1,0)`.
pub(super) fn refine_even(site: &mut MoveSite<'_>) -> Result<[CoreTransformation; 3]> {
    let (c, a, b) = blocks::<3>(site);
    let m11 = |x: &[[Complex64; 3]; 3]| (x[0][0], x[0][1], x[1][0]);
    let (e11, e12, e21) = m11(&a);
    let (g11, g12, g21) = m11(&b);
    let [x31, y13] = solve_2x2([[a[0][2], a[2][0]], [b[0][2], b[2][0]]], [-e11, -g11])?;
    let [x32, _y12] = solve_2x2(
        [[a[0][2], a[1][1]], [b[0][2], b[1][1]]],
        [-(e12 + y13 * a[2][1]), -(g12 + y13 * b[2][1])],
    )?;
    let [x21, _y23] = solve_2x2(
        [[a[1][1], a[2][0]], [b[1][1], b[2][0]]],
        [-(e21 + a[1][2] * x31), -(g21 + b[1][2] * x31)],
    )?;
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let cores = three_core_qr(c, [one, x21, x31], [zero, one, x32])?;
    for g in &cores {
        site.apply(g);
    }
    Ok(cores)
}
