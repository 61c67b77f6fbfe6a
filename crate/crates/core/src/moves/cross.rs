use num_complex::Complex64;

use crate::error::{Error, Result};

/// Relative determinant below which two poles count as coincident.
pub const COINCIDENCE_THRESHOLD: f64 = 1e-14;

fn inf_norm(r: &[Complex64; 2]) -> f64 {
    r[0].norm().max(r[1].norm())
}

/// Row-scales `m` to unit ∞-norm rows and refuses nearly dependent columns.
///
/// Returns the scaled matrix and the row scale factors. The test is
/// `|det| ≤ 1e-14 ‖c₁‖ ‖c₂‖` on the scaled matrix, which for pole pencils is
/// the chordal distance between the two poles.
fn scaled(m: [[Complex64; 2]; 2]) -> Result<([[Complex64; 2]; 2], [f64; 2], Complex64)> {
    let mut out = m;
    let mut f = [1.0; 2];
    for (row, fi) in out.iter_mut().zip(f.iter_mut()) {
        let s = inf_norm(row);
        if s == 0.0 {
            return Err(Error::CoincidentPoles);
        }
        *fi = 1.0 / s;
        row[0] *= *fi;
        row[1] *= *fi;
    }
    let det = out[0][0] * out[1][1] - out[0][1] * out[1][0];
    let c1 = libm::hypot(out[0][0].norm(), out[1][0].norm());
    let c2 = libm::hypot(out[0][1].norm(), out[1][1].norm());
    if !(det.norm() > COINCIDENCE_THRESHOLD * c1 * c2) {
        return Err(Error::CoincidentPoles);
    }
    Ok((out, f, det))
}

/// Raises [`Error::CoincidentPoles`] when the poles `α₁/β₁` and `α₂/β₂` are too close.
pub fn check_separated(a1: Complex64, a2: Complex64, b1: Complex64, b2: Complex64) -> Result<()> {
    scaled([[a1, a2], [b1, b2]]).map(|_| ())
}

/// Solves `m · x = rhs` by Cramer's rule after row scaling.
pub fn solve_2x2(m: [[Complex64; 2]; 2], rhs: [Complex64; 2]) -> Result<[Complex64; 2]> {
    let (s, f, det) = scaled(m)?;
    let r = [rhs[0] * f[0], rhs[1] * f[1]];
    let x0 = (r[0] * s[1][1] - s[0][1] * r[1]) / det;
    let x1 = (s[0][0] * r[1] - r[0] * s[1][0]) / det;
    Ok([x0, x1])
}

/// Solves `[[a1, a2], [b1, b2]] · [y; −x] = rhs` and returns `(y, x)`.
pub fn cross_solve_2x2(
    a1: Complex64,
    a2: Complex64,
    b1: Complex64,
    b2: Complex64,
    rhs: [Complex64; 2],
) -> Result<(Complex64, Complex64)> {
    let [y, mx] = solve_2x2([[a1, a2], [b1, b2]], rhs)?;
    Ok((y, -mx))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn worked_example() {
        let (y, x) = cross_solve_2x2(r(2.0), r(1.0), r(1.0), r(2.0), [r(1.0), r(1.0)]).unwrap();
        assert!((y - r(1.0 / 3.0)).norm() < 1e-15);
        assert!((x - r(-1.0 / 3.0)).norm() < 1e-15);
    }

    #[test]
    fn coincident_poles_refused() {
        // poles 2/1 and 4/2 coincide
        assert_eq!(
            cross_solve_2x2(r(2.0), r(4.0), r(1.0), r(2.0), [r(1.0), r(0.0)]),
            Err(Error::CoincidentPoles)
        );
        // chordal gap 1e-16
        assert!(check_separated(r(1.0), r(1.0 + 2e-16), r(1.0), r(1.0)).is_err());
        assert!(check_separated(r(1.0), r(1.0 + 1e-10), r(1.0), r(1.0)).is_ok());
    }

    #[test]
    fn scale_invariance() {
        let m = [
            [Complex64::new(3e-200, 1e-200), r(2e-200)],
            [r(1e150), Complex64::new(0.0, 5e150)],
        ];
        let x = solve_2x2(m, [r(1e-200), r(1e150)]).unwrap();
        let res0 = m[0][0] * x[0] + m[0][1] * x[1] - r(1e-200);
        let res1 = m[1][0] * x[0] + m[1][1] * x[1] - r(1e150);
        assert!(res0.norm() < 1e-214 && res1.norm() < 1e136);
    }
}
