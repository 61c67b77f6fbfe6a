//! Unstructured rational QZ on a stalled centre window.
//!
//! Flipping the rows of an anti-Hessenberg pencil gives an upper Hessenberg
//! pair `(H, K)` with poles `h_{i+1,i}/k_{i+1,i}`. Single-shift RQZ then uses
//! independent left and right rotations; the structure is given up.

use alloc::vec::Vec;
use num_complex::Complex64;

use super::shift::{exceptional_shift, quadratic_roots};
use crate::error::{Error, Result};
use crate::matrix::CMatrix;
use crate::moves::{rotation_from_vector, CoreTransformation};
use crate::pencil::{HomogeneousValue, StructureKind};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `m ← G^* m` on rows `i, i+1`, columns `c0..`.
fn left(m: &mut CMatrix, g: &CoreTransformation, i: usize, c0: usize) {
    for j in c0..m.ncols() {
        let (u, v) = g.apply_adjoint(m[(i, j)], m[(i + 1, j)]);
        m[(i, j)] = u;
        m[(i + 1, j)] = v;
    }
}

/// `m ← m G` on columns `j, j+1`, rows `..rows`.
fn right(m: &mut CMatrix, g: &CoreTransformation, j: usize, rows: usize) {
    let (c, s) = (g.c, g.s);
    for r in 0..rows {
        let (x, y) = (m[(r, j)], m[(r, j + 1)]);
        m[(r, j)] = c * x + s * y;
        m[(r, j + 1)] = -s.conj() * x + c.conj() * y;
    }
}

fn unit(v: [Complex64; 2]) -> [Complex64; 2] {
    let s = v[0].norm().max(v[1].norm());
    if s > 0.0 {
        [v[0] / s, v[1] / s]
    } else {
        v
    }
}

struct Rqz {
    h: CMatrix,
    k: CMatrix,
    tol_h: f64,
    tol_k: f64,
}

impl Rqz {
    fn negligible(&self, i: usize) -> bool {
        self.h[(i + 1, i)].norm() <= self.tol_h && self.k[(i + 1, i)].norm() <= self.tol_k
    }

    fn pole(&self, i: usize) -> HomogeneousValue {
        HomogeneousValue {
            alpha: self.h[(i + 1, i)],
            beta: self.k[(i + 1, i)],
        }
    }

    fn sweep(&mut self, lo: usize, hi: usize, rho: &HomogeneousValue) -> Result<()> {
        let old = self.pole(lo);
        let (h, k) = (&mut self.h, &mut self.k);
        // introduce rho at the top
        let w = [
            rho.beta * h[(lo, lo)] - rho.alpha * k[(lo, lo)],
            rho.beta * h[(lo + 1, lo)] - rho.alpha * k[(lo + 1, lo)],
        ];
        let g = rotation_from_vector(lo, unit(w)).map_err(|_| Error::DegenerateShift)?;
        left(h, &g, lo, lo);
        left(k, &g, lo, lo);
        // chase it down: swap the upper triangular 2x2 pole pencils
        for i in lo..hi - 1 {
            let (s11, s12, s22) = (h[(i + 1, i)], h[(i + 1, i + 1)], h[(i + 2, i + 1)]);
            let (t11, t12, t22) = (k[(i + 1, i)], k[(i + 1, i + 1)], k[(i + 2, i + 1)]);
            let x = [-(t22 * s12 - s22 * t12), t22 * s11 - s22 * t11];
            let z = match rotation_from_vector(i, unit(x)) {
                Ok(z) => z,
                Err(_) => CoreTransformation::identity(i),
            };
            right(h, &z, i, i + 3);
            right(k, &z, i, i + 3);
            let ua = [h[(i + 1, i)], h[(i + 2, i)]];
            let ub = [k[(i + 1, i)], k[(i + 2, i)]];
            let na = ua[0].norm().max(ua[1].norm())
                / (s11.norm() + s12.norm() + s22.norm()).max(f64::MIN_POSITIVE);
            let nb = ub[0].norm().max(ub[1].norm())
                / (t11.norm() + t12.norm() + t22.norm()).max(f64::MIN_POSITIVE);
            let u = if na >= nb { ua } else { ub };
            let q =
                rotation_from_vector(i + 1, unit(u)).unwrap_or(CoreTransformation::identity(i + 1));
            left(h, &q, i + 1, i);
            left(k, &q, i + 1, i);
            h[(i + 2, i)] = ZERO;
            k[(i + 2, i)] = ZERO;
        }
        // replace rho at the bottom by the pole removed at the top
        let w = [
            old.beta * h[(hi, hi - 1)] - old.alpha * k[(hi, hi - 1)],
            old.beta * h[(hi, hi)] - old.alpha * k[(hi, hi)],
        ];
        if let Ok(z) = rotation_from_vector(hi - 1, unit([w[1], -w[0]])) {
            right(h, &z, hi - 1, hi + 1);
            right(k, &z, hi - 1, hi + 1);
        }
        Ok(())
    }
}

fn block2(m: &CMatrix, i: usize) -> [[Complex64; 2]; 2] {
    [
        [m[(i, i)], m[(i, i + 1)]],
        [m[(i + 1, i)], m[(i + 1, i + 1)]],
    ]
}

/// Eigenvalues of an anti-Hessenberg pencil block, structure ignored.
pub(crate) fn unstructured_eigenvalues(
    a: &CMatrix,
    b: &CMatrix,
    kind: StructureKind,
) -> Result<Vec<HomogeneousValue>> {
    let m = a.nrows();
    let flip = |x: &CMatrix| CMatrix::from_fn(m, m, |i, j| x[(m - 1 - i, j)]);
    let mut r = Rqz {
        h: flip(a),
        k: flip(b),
        tol_h: 10.0 * f64::EPSILON * a.frobenius_norm(),
        tol_k: 10.0 * f64::EPSILON * b.frobenius_norm(),
    };
    let mut out = Vec::with_capacity(m);
    let mut hi = m;
    let mut stalled = 0usize;
    let mut total = 0usize;
    while hi > 0 {
        let top = hi - 1;
        let mut lo = top;
        while lo > 0 && !r.negligible(lo - 1) {
            lo -= 1;
        }
        if lo > 0 {
            r.h[(lo, lo - 1)] = ZERO;
            r.k[(lo, lo - 1)] = ZERO;
        }
        match top - lo {
            0 => {
                out.push(HomogeneousValue {
                    alpha: r.h[(top, top)],
                    beta: r.k[(top, top)],
                });
                hi -= 1;
                stalled = 0;
                continue;
            }
            1 => {
                out.extend(quadratic_roots(block2(&r.h, lo), block2(&r.k, lo))?);
                hi -= 2;
                stalled = 0;
                continue;
            }
            _ => {}
        }
        if stalled >= 30 || total > 60 * m {
            return Err(Error::Convergence {
                window: top - lo + 1,
                sweeps: stalled,
            });
        }
        let rayleigh = HomogeneousValue {
            alpha: r.h[(top, top)],
            beta: r.k[(top, top)],
        };
        let rho = if stalled > 0 && stalled.is_multiple_of(10) {
            exceptional_shift(&rayleigh, kind, total as u64)
        } else {
            let roots = quadratic_roots(block2(&r.h, top - 1), block2(&r.k, top - 1))?;
            if roots[0].chordal_distance(&rayleigh) <= roots[1].chordal_distance(&rayleigh) {
                roots[0]
            } else {
                roots[1]
            }
        };
        r.sweep(lo, top, &rho)?;
        stalled += 1;
        total += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pencil::gen_random_palindromic;
    use crate::verify::{match_eigensets, qz_eigenvalues};

    #[test]
    fn matches_reference_solver() {
        for n in [3, 5, 8, 13, 24] {
            for seed in 0..3 {
                let p = gen_random_palindromic(n, seed);
                let got = unstructured_eigenvalues(p.a(), p.b(), p.kind()).unwrap();
                let want = qz_eigenvalues(p.a(), p.b()).unwrap();
                let d = match_eigensets(&got, &want).unwrap();
                assert!(d < 1e-10, "n={n} seed={seed}: {d}");
            }
        }
    }
}
