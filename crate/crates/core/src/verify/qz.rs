//! Reference eigensolver: Hessenberg–triangular reduction followed by
//! single-shift complex QZ. Independent of the pole-swapping code.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::pencil::HomogeneousValue;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Plane rotation `[[c, s], [-conj(s), c]]` with real `c`.
#[derive(Clone, Copy)]
struct Givens {
    c: f64,
    s: Complex64,
}

impl Givens {
    /// Rotation with `G · (f, g)^T = (r, 0)^T`.
    fn zeroing(f: Complex64, g: Complex64) -> Self {
        if g == ZERO {
            return Givens { c: 1.0, s: ZERO };
        }
        if f == ZERO {
            return Givens {
                c: 0.0,
                s: g.conj() / g.norm(),
            };
        }
        let (fa, ga) = (f.norm(), g.norm());
        let d = libm::hypot(fa, ga);
        let c = fa / d;
        let s = (f / fa) * g.conj() / d;
        Givens { c, s }
    }

    /// Rows `i, i+1` of `m` from `col0` on: `m ← G m`.
    fn left(&self, m: &mut CMatrix, i: usize, col0: usize) {
        for j in col0..m.ncols() {
            let (x, y) = (m[(i, j)], m[(i + 1, j)]);
            m[(i, j)] = x * self.c + self.s * y;
            m[(i + 1, j)] = -self.s.conj() * x + y * self.c;
        }
    }
}

/// Reduces `(A, B)` to `(H, T)` with `H` upper Hessenberg and `T` upper triangular.
fn hessenberg_triangular(a: &CMatrix, b: &CMatrix) -> (CMatrix, CMatrix) {
    let n = a.nrows();
    let (mut h, mut t) = (a.clone(), b.clone());
    for j in 0..n.saturating_sub(1) {
        for i in (j + 1..n).rev() {
            let g = Givens::zeroing(t[(i - 1, j)], t[(i, j)]);
            g.left(&mut t, i - 1, 0);
            g.left(&mut h, i - 1, 0);
            t[(i, j)] = ZERO;
        }
    }
    for j in 0..n.saturating_sub(2) {
        for i in (j + 2..n).rev() {
            let g = Givens::zeroing(h[(i - 1, j)], h[(i, j)]);
            g.left(&mut h, i - 1, j);
            g.left(&mut t, i - 1, i - 1);
            h[(i, j)] = ZERO;
            // restore T: zero t[i][i-1] from the right
            let z = Givens::zeroing(t[(i, i)], t[(i, i - 1)]);
            rot_cols_zero(&mut t, &mut h, i, z);
        }
    }
    (h, t)
}

/// Right rotation on columns `i-1, i` chosen so that `t[i][i-1]` vanishes.
fn rot_cols_zero(t: &mut CMatrix, h: &mut CMatrix, i: usize, z: Givens) {
    // z zeroes (t_ii, t_i,i-1) as a row vector acting on columns (i, i-1)
    let apply = |m: &mut CMatrix, rows: usize| {
        for r in 0..rows {
            let (x, y) = (m[(r, i)], m[(r, i - 1)]);
            m[(r, i)] = x * z.c + y * z.s;
            m[(r, i - 1)] = -z.s.conj() * x + y * z.c;
        }
    };
    apply(t, i + 1);
    // columns right of the current one are still full in H
    apply(h, h.nrows());
    t[(i, i - 1)] = ZERO;
}

fn wilkinson(h: &CMatrix, t: &CMatrix, k: usize) -> Complex64 {
    // eigenvalues of the trailing 2x2 pencil, the one nearer h_kk/t_kk
    let (a11, a12, a21, a22) = (h[(k - 1, k - 1)], h[(k - 1, k)], h[(k, k - 1)], h[(k, k)]);
    let (b11, b12, b22) = (t[(k - 1, k - 1)], t[(k - 1, k)], t[(k, k)]);
    let c2 = b11 * b22;
    let c1 = -(a11 * b22 + a22 * b11 - a21 * b12);
    let c0 = a11 * a22 - a12 * a21;
    let target = a22 / b22;
    let disc = (c1 * c1 - c2 * c0 * 4.0).sqrt();
    let q = if (c1.conj() * disc).re >= 0.0 {
        -(c1 + disc) * 0.5
    } else {
        -(c1 - disc) * 0.5
    };
    let mut roots = [q / c2, c0 / q];
    for r in roots.iter_mut() {
        if !r.is_finite() {
            *r = target;
        }
    }
    if (roots[0] - target).norm() <= (roots[1] - target).norm() {
        roots[0]
    } else {
        roots[1]
    }
}

/// Generalized eigenvalues of a general square pencil.
pub fn qz_eigenvalues(a: &CMatrix, b: &CMatrix) -> Result<Vec<HomogeneousValue>> {
    if !a.is_square() || !b.is_square() || a.nrows() != b.nrows() {
        return Err(Error::Shape("pencil must be square"));
    }
    let n = a.nrows();
    let (mut h, mut t) = hessenberg_triangular(a, b);
    let eps = f64::EPSILON;
    let hn = h.frobenius_norm().max(f64::MIN_POSITIVE);
    let tn = t.frobenius_norm().max(f64::MIN_POSITIVE);
    let mut out = Vec::with_capacity(n);
    let mut hi = n;
    let mut iter = 0usize;
    let mut stall = 0usize;
    while hi > 0 {
        if iter > 100 * n.max(1) {
            return Err(Error::Oracle("QZ iteration limit"));
        }
        let k = hi - 1;
        // find start of the unreduced block ending at k
        let mut lo = k;
        while lo > 0 {
            let sub = h[(lo, lo - 1)];
            if sub.norm() <= eps * (h[(lo, lo)].norm() + h[(lo - 1, lo - 1)].norm()).max(eps * hn) {
                h[(lo, lo - 1)] = ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == k {
            out.push(HomogeneousValue {
                alpha: h[(k, k)],
                beta: t[(k, k)],
            });
            hi -= 1;
            stall = 0;
            continue;
        }
        // an infinite eigenvalue: zero on the diagonal of T
        if let Some(j) = (lo..=k).find(|&j| t[(j, j)].norm() <= eps * tn) {
            t[(j, j)] = ZERO;
            chase_zero(&mut h, &mut t, lo, j, k);
            continue;
        }
        iter += 1;
        stall += 1;
        let sigma = if stall.is_multiple_of(10) {
            h[(k, k)] / t[(k, k)]
                + Complex64::new(h[(k, k - 1)].norm(), 0.7 * h[(k - 1, k - 1)].norm())
        } else {
            wilkinson(&h, &t, k)
        };
        qz_step(&mut h, &mut t, lo, k, sigma);
    }
    out.reverse();
    Ok(out)
}

/// Moves a zero `t[j][j]` to the bottom of the block `lo..=k` and deflates it
/// as an infinite eigenvalue by zeroing `h[k][k-1]`.
fn chase_zero(h: &mut CMatrix, t: &mut CMatrix, lo: usize, j: usize, k: usize) {
    let n = h.nrows();
    if j == lo {
        // zero at the top: rotate rows lo, lo+1 to clear h[lo+1][lo]
        let g = Givens::zeroing(h[(lo, lo)], h[(lo + 1, lo)]);
        g.left(h, lo, lo);
        g.left(t, lo, lo);
        h[(lo + 1, lo)] = ZERO;
        // t[lo+1][lo] is zero since t[lo][lo] and t[lo+1][lo] were zero
        t[(lo + 1, lo)] = ZERO;
        return;
    }
    for i in j..k {
        let g = Givens::zeroing(t[(i, i + 1)], t[(i + 1, i + 1)]);
        g.left(t, i, i);
        g.left(h, i, i.saturating_sub(1));
        t[(i + 1, i + 1)] = ZERO;
        if i > lo {
            let z = Givens::zeroing(h[(i + 1, i)], h[(i + 1, i - 1)]);
            for r in 0..n.min(i + 2) {
                let (x, y) = (h[(r, i)], h[(r, i - 1)]);
                h[(r, i)] = x * z.c + y * z.s;
                h[(r, i - 1)] = -z.s.conj() * x + y * z.c;
            }
            for r in 0..=i {
                let (x, y) = (t[(r, i)], t[(r, i - 1)]);
                t[(r, i)] = x * z.c + y * z.s;
                t[(r, i - 1)] = -z.s.conj() * x + y * z.c;
            }
            h[(i + 1, i - 1)] = ZERO;
        }
    }
    // t[k][k] = 0 now; clear h[k][k-1] from the right
    let z = Givens::zeroing(h[(k, k)], h[(k, k - 1)]);
    for r in 0..=k {
        let (x, y) = (h[(r, k)], h[(r, k - 1)]);
        h[(r, k)] = x * z.c + y * z.s;
        h[(r, k - 1)] = -z.s.conj() * x + y * z.c;
        let (x, y) = (t[(r, k)], t[(r, k - 1)]);
        t[(r, k)] = x * z.c + y * z.s;
        t[(r, k - 1)] = -z.s.conj() * x + y * z.c;
    }
    h[(k, k - 1)] = ZERO;
}

fn qz_step(h: &mut CMatrix, t: &mut CMatrix, lo: usize, k: usize, sigma: Complex64) {
    let n = h.nrows();
    let mut f = h[(lo, lo)] - sigma * t[(lo, lo)];
    let mut g = h[(lo + 1, lo)];
    for i in lo..k {
        let q = Givens::zeroing(f, g);
        q.left(h, i, if i > lo { i - 1 } else { lo });
        q.left(t, i, i);
        if i > lo {
            h[(i + 1, i - 1)] = ZERO;
        }
        // t[i+1][i] fill, clear from the right on columns i, i+1
        let z = Givens::zeroing(t[(i + 1, i + 1)], t[(i + 1, i)]);
        let rows_h = n.min(i + 3).min(k + 1);
        for r in 0..rows_h {
            let (x, y) = (h[(r, i + 1)], h[(r, i)]);
            h[(r, i + 1)] = x * z.c + y * z.s;
            h[(r, i)] = -z.s.conj() * x + y * z.c;
        }
        for r in 0..=i + 1 {
            let (x, y) = (t[(r, i + 1)], t[(r, i)]);
            t[(r, i + 1)] = x * z.c + y * z.s;
            t[(r, i)] = -z.s.conj() * x + y * z.c;
        }
        t[(i + 1, i)] = ZERO;
        if i + 2 <= k {
            f = h[(i + 1, i)];
            g = h[(i + 2, i)];
        }
    }
}
