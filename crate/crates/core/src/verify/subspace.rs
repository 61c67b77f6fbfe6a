use alloc::vec::Vec;
use num_complex::Complex64;

use crate::error::Result;
use crate::matrix::{CMatrix, Lu};
use crate::pencil::HomogeneousValue;

/// Orthonormal basis of the column span (two passes of Gram–Schmidt).
fn orthonormal(u: &CMatrix) -> CMatrix {
    let (n, k) = (u.nrows(), u.ncols());
    let mut q = u.clone();
    for j in 0..k {
        for _ in 0..2 {
            for p in 0..j {
                let dot: Complex64 = (0..n).map(|i| q[(i, p)].conj() * q[(i, j)]).sum();
                for i in 0..n {
                    let v = q[(i, p)];
                    q[(i, j)] -= dot * v;
                }
            }
        }
        let nrm = libm::sqrt((0..n).map(|i| q[(i, j)].norm_sqr()).sum::<f64>());
        for i in 0..n {
            q[(i, j)] /= nrm;
        }
    }
    q
}

/// Singular values by one-sided Jacobi.
pub(crate) fn singular_values(m: &CMatrix) -> Vec<f64> {
    let (n, k) = (m.nrows(), m.ncols());
    let mut a = m.clone();
    for _ in 0..60 {
        let mut off: f64 = 0.0;
        for p in 0..k {
            for q in p + 1..k {
                let mut alpha = 0.0;
                let mut beta = 0.0;
                let mut gamma = Complex64::new(0.0, 0.0);
                for i in 0..n {
                    alpha += a[(i, p)].norm_sqr();
                    beta += a[(i, q)].norm_sqr();
                    gamma += a[(i, p)].conj() * a[(i, q)];
                }
                let g = gamma.norm();
                if g == 0.0 || g <= 1e-300 {
                    continue;
                }
                off = off.max(g / libm::sqrt(alpha * beta).max(1e-300));
                // rotate so that columns p, q become orthogonal
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = zeta.signum() / (zeta.abs() + libm::sqrt(1.0 + zeta * zeta));
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / libm::sqrt(1.0 + t * t);
                let s = c * t;
                for i in 0..n {
                    let x = a[(i, p)];
                    let y = a[(i, q)] * phase.conj();
                    a[(i, p)] = x * c - y * s;
                    a[(i, q)] = (x * s + y * c) * phase;
                }
            }
        }
        if off <= 1e-15 {
            break;
        }
    }
    (0..k)
        .map(|j| libm::sqrt((0..n).map(|i| a[(i, j)].norm_sqr()).sum::<f64>()))
        .collect()
}

/// Sine of the largest principal angle between the spans of `x` and `y`.
pub fn largest_principal_sine(x: &CMatrix, y: &CMatrix) -> f64 {
    let qx = orthonormal(x);
    let qy = orthonormal(y);
    // (I - Qx Qx^*) Qy
    let proj = qx.mul(&qx.adjoint().mul(&qy));
    let r = qy.sub(&proj);
    singular_values(&r).into_iter().fold(0.0, f64::max).min(1.0)
}

/// For each `k < n`, the sine of the largest angle between `span Q[:, :k]` and
/// `(A − ρ̃B)^{-1}(A − ρB) E_k`.
pub fn subspace_check(
    a: &CMatrix,
    b: &CMatrix,
    rho: &HomogeneousValue,
    rho_tilde: &HomogeneousValue,
    q: &CMatrix,
) -> Result<Vec<f64>> {
    let n = a.nrows();
    let num = b
        .scale(rho.alpha)
        .sub(&a.scale(rho.beta))
        .scale(Complex64::new(-1.0, 0.0));
    let den = a.scale(rho_tilde.beta).sub(&b.scale(rho_tilde.alpha));
    let lu = Lu::new(&den)?;
    let w = lu.solve(&num);
    Ok((1..n)
        .map(|k| largest_principal_sine(&q.submatrix(0, 0, n, k), &w.submatrix(0, 0, n, k)))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jacobi_singular_values() {
        let m = CMatrix::from_fn(4, 2, |i, j| match (i, j) {
            (0, 0) => Complex64::new(3.0, 0.0),
            (1, 1) => Complex64::new(0.0, 2.0),
            (2, 0) => Complex64::new(4.0, 0.0),
            _ => Complex64::new(0.0, 0.0),
        });
        let mut s = singular_values(&m);
        s.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((s[0] - 2.0).abs() < 1e-14 && (s[1] - 5.0).abs() < 1e-14);
    }

    #[test]
    fn angle_between_lines() {
        let th = 1e-9;
        let x = CMatrix::from_fn(2, 1, |i, _| {
            Complex64::new(if i == 0 { 1.0 } else { 0.0 }, 0.0)
        });
        let y = CMatrix::from_fn(2, 1, |i, _| {
            Complex64::new(if i == 0 { libm::cos(th) } else { libm::sin(th) }, 0.0)
        });
        assert!((largest_principal_sine(&x, &y) - th).abs() < 1e-20);
    }
}
