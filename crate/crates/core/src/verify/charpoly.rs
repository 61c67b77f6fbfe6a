//! Second reference path for small pencils: `det(A − λB)` by fraction-free
//! elimination over polynomials, roots by Aberth iteration, then Newton polish
//! on the matrix itself.

use alloc::vec;
use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::matrix::{CMatrix, Lu};
use crate::pencil::HomogeneousValue;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

pub const MAX_CHARPOLY_N: usize = 8;

type Poly = Vec<Complex64>;

fn pnorm(p: &Poly) -> f64 {
    p.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn pmul(p: &Poly, q: &Poly) -> Poly {
    let mut r = vec![ZERO; p.len() + q.len() - 1];
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            r[i + j] += a * b;
        }
    }
    r
}

fn psub(p: &Poly, q: &Poly) -> Poly {
    let n = p.len().max(q.len());
    (0..n)
        .map(|i| p.get(i).copied().unwrap_or(ZERO) - q.get(i).copied().unwrap_or(ZERO))
        .collect()
}

/// Quotient of an exact division `num / den` with `len` coefficients.
/// Works from whichever end of `den` has the larger coefficient.
fn pdiv_exact(num: &Poly, den: &Poly, len: usize) -> Poly {
    let dl = den.len() - 1;
    let mut q = vec![ZERO; len];
    if den[dl].norm() >= den[0].norm() {
        for idx in (0..len).rev() {
            let mut s = num.get(idx + dl).copied().unwrap_or(ZERO);
            for j in 1..=dl.min(len - 1 - idx) {
                s -= q[idx + j] * den[dl - j];
            }
            q[idx] = s / den[dl];
        }
    } else {
        for idx in 0..len {
            let mut s = num.get(idx).copied().unwrap_or(ZERO);
            for j in 1..=dl.min(idx) {
                s -= q[idx - j] * den[j];
            }
            q[idx] = s / den[0];
        }
    }
    q
}

/// Coefficients (ascending) of `det(A − λB)`.
pub fn characteristic_polynomial(a: &CMatrix, b: &CMatrix) -> Result<Vec<Complex64>> {
    let n = a.nrows();
    if n == 0 {
        return Ok(vec![Complex64::new(1.0, 0.0)]);
    }
    let mut m: Vec<Vec<Poly>> = (0..n)
        .map(|i| (0..n).map(|j| vec![a[(i, j)], -b[(i, j)]]).collect())
        .collect();
    let mut prev: Poly = vec![Complex64::new(1.0, 0.0)];
    let mut sign = 1.0;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&x, &y| pnorm(&m[x][k]).partial_cmp(&pnorm(&m[y][k])).unwrap())
            .unwrap();
        if pnorm(&m[p][k]) == 0.0 {
            return Ok(vec![ZERO; n + 1]);
        }
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        let len = k + 2 + 1;
        for i in k + 1..n {
            for j in k + 1..n {
                let num = psub(&pmul(&m[k][k], &m[i][j]), &pmul(&m[i][k], &m[k][j]));
                m[i][j] = pdiv_exact(&num, &prev, len.min(num.len()));
            }
        }
        prev = m[k][k].clone();
    }
    let mut det = prev;
    det.resize(n + 1, ZERO);
    Ok(det.into_iter().map(|z| z * sign).collect())
}

fn horner(p: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut v = ZERO;
    let mut d = ZERO;
    for c in p.iter().rev() {
        d = d * z + v;
        v = v * z + c;
    }
    (v, d)
}

/// Simultaneous root finding; `p` ascending with nonzero leading coefficient.
pub fn aberth_roots(p: &[Complex64]) -> Result<Vec<Complex64>> {
    let d = p.len() - 1;
    if d == 0 {
        return Ok(Vec::new());
    }
    let lead = p[d];
    let monic: Vec<Complex64> = p.iter().map(|c| c / lead).collect();
    let r = monic[..d]
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max)
        .max(1e-300);
    let r0 = libm::pow(monic[0].norm().max(1e-300), 1.0 / d as f64).min(1.0 + r);
    let mut z: Vec<Complex64> = (0..d)
        .map(|k| Complex64::from_polar(r0, 2.0 * core::f64::consts::PI * k as f64 / d as f64 + 0.4))
        .collect();
    for _ in 0..1000 {
        let mut moved: f64 = 0.0;
        for k in 0..d {
            let (v, dv) = horner(&monic, z[k]);
            if v == ZERO {
                continue;
            }
            let w = v / dv;
            let s: Complex64 = (0..d)
                .filter(|&j| j != k)
                .map(|j| Complex64::new(1.0, 0.0) / (z[k] - z[j]))
                .sum();
            let delta = w / (Complex64::new(1.0, 0.0) - w * s);
            if delta.is_finite() {
                z[k] -= delta;
                moved = moved.max(delta.norm() / z[k].norm().max(1e-300));
            }
        }
        if moved <= 4.0 * f64::EPSILON {
            return Ok(z);
        }
    }
    Ok(z)
}

fn newton_polish(a: &CMatrix, b: &CMatrix, mut lambda: Complex64) -> Complex64 {
    let start = lambda;
    for _ in 0..8 {
        let m = a.sub(&b.scale(lambda));
        let lu = match Lu::new(&m) {
            Ok(lu) => lu,
            Err(_) => break,
        };
        let x = lu.solve(b);
        let tr: Complex64 = (0..a.nrows()).map(|i| x[(i, i)]).sum();
        let step = Complex64::new(1.0, 0.0) / tr;
        if !step.is_finite() {
            break;
        }
        lambda += step;
        if step.norm() <= 4.0 * f64::EPSILON * lambda.norm().max(1.0) {
            break;
        }
    }
    // a jump to another root is worse than no polish
    if (lambda - start).norm() > 1e-6 * start.norm().max(1.0) {
        start
    } else {
        lambda
    }
}

/// Eigenvalues of an `n ≤ 8` pencil through its characteristic polynomial.
pub fn charpoly_eigenvalues(a: &CMatrix, b: &CMatrix) -> Result<Vec<HomogeneousValue>> {
    let n = a.nrows();
    if n > MAX_CHARPOLY_N {
        return Err(Error::Oracle(
            "characteristic polynomial path limited to n <= 8",
        ));
    }
    let p = characteristic_polynomial(a, b)?;
    let scale = pnorm(&p);
    if scale == 0.0 {
        return Err(Error::DegeneratePencil("det(A - λB) vanishes identically"));
    }
    let mut d = n;
    while d > 0 && p[d].norm() <= 1e-13 * scale {
        d -= 1;
    }
    let roots = aberth_roots(&p[..=d])?;
    let mut out: Vec<HomogeneousValue> = roots
        .into_iter()
        .map(|z| HomogeneousValue::from_complex(newton_polish(a, b, z)))
        .collect();
    out.extend((d..n).map(|_| HomogeneousValue::infinity()));
    Ok(out)
}
