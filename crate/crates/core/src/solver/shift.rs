use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::pencil::{HomogeneousValue, StructureKind};

/// Roots of `det(βA − αB) = 0` for a 2×2 pencil, as homogeneous pairs.
///
/// With `c₂α² + c₁αβ + c₀β² = 0` the roots are `(q, c₂)` and `(c₀, q)`,
/// `q = −(c₁ ± √(c₁² − 4c₂c₀))/2` with the sign avoiding cancellation.
pub fn quadratic_roots(
    a: [[Complex64; 2]; 2],
    b: [[Complex64; 2]; 2],
) -> Result<[HomogeneousValue; 2]> {
    let c2 = b[0][0] * b[1][1] - b[0][1] * b[1][0];
    let c1 = -(a[0][0] * b[1][1] + a[1][1] * b[0][0] - a[0][1] * b[1][0] - a[1][0] * b[0][1]);
    let c0 = a[0][0] * a[1][1] - a[0][1] * a[1][0];
    let zero = Complex64::new(0.0, 0.0);
    let scale = c0.norm().max(c1.norm()).max(c2.norm());
    if scale == 0.0 {
        return Err(Error::DegeneratePencil(
            "2x2 block has an identically vanishing determinant",
        ));
    }
    let (c0, c1, c2) = (c0 / scale, c1 / scale, c2 / scale);
    let disc = (c1 * c1 - c2 * c0 * 4.0).sqrt();
    let q = if (c1.conj() * disc).re >= 0.0 {
        -(c1 + disc) * 0.5
    } else {
        -(c1 - disc) * 0.5
    };
    if q == zero {
        // c1 = 0 and c0·c2 = 0: a double root at 0 or infinity
        let r = if c2 == zero {
            HomogeneousValue::infinity()
        } else {
            HomogeneousValue::from_complex(zero)
        };
        return Ok([r, r]);
    }
    Ok([
        HomogeneousValue { alpha: q, beta: c2 },
        HomogeneousValue { alpha: c0, beta: q },
    ])
}

fn lex_key(v: &HomogeneousValue) -> (f64, f64) {
    match v.value() {
        Some(z) => (z.re, z.im),
        None => (f64::INFINITY, f64::INFINITY),
    }
}

/// Root of the block `[[a_{1,n-1}, a_{1,n}], [a_{2,n-1}, a_{2,n}]]` chordally
/// nearest to the Rayleigh value `a_{1,n}/b_{1,n}`. Ties go to the
/// lexicographically smaller `(Re, Im)`.
pub fn wilkinson_shift(
    a: [[Complex64; 2]; 2],
    b: [[Complex64; 2]; 2],
    rayleigh: &HomogeneousValue,
) -> Result<HomogeneousValue> {
    let [r0, r1] = quadratic_roots(a, b)?;
    Ok(nearest(r0, r1, rayleigh))
}

fn nearest(
    r0: HomogeneousValue,
    r1: HomogeneousValue,
    target: &HomogeneousValue,
) -> HomogeneousValue {
    let (d0, d1) = (r0.chordal_distance(target), r1.chordal_distance(target));
    if d1 < d0 || (d1 == d0 && lex_key(&r1) < lex_key(&r0)) {
        r1
    } else {
        r0
    }
}

/// Keeps a shift away from the self-companion set so that shift and
/// companion shift stay distinct.
///
/// Palindromic: modulus pushed radially to `1 ± gap` (outside when on the
/// circle). Alternating: real part pushed to `±gap·|ρ|`.
pub fn guard_shift(
    rho: &HomogeneousValue,
    kind: StructureKind,
    gap: f64,
) -> Result<HomogeneousValue> {
    let x = rho.normalized();
    match kind {
        StructureKind::Palindromic => {
            let (ra, rb) = (x.alpha.norm(), x.beta.norm());
            if ra == 0.0 || rb == 0.0 {
                return Ok(x);
            }
            let m = ra / rb;
            if (m - 1.0).abs() >= gap {
                return Ok(x);
            }
            let target = if m >= 1.0 { 1.0 + gap } else { 1.0 - gap };
            Ok(HomogeneousValue {
                alpha: x.alpha * (target / m),
                beta: x.beta,
            })
        }
        StructureKind::Alternating => {
            let z = match x.value() {
                Some(z) if z.norm() > 0.0 => z,
                _ => {
                    return Err(Error::Guard(
                        "0 and infinity are their own alternating companions",
                    ))
                }
            };
            let r = z.norm();
            if z.re.abs() >= gap * r {
                return Ok(x);
            }
            let re = if z.re < 0.0 { -gap * r } else { gap * r };
            Ok(HomogeneousValue::from_complex(Complex64::new(re, z.im)))
        }
    }
}

/// Pseudo-random shift used after a stall, seeded by the sweep counter.
pub fn exceptional_shift(
    scale_hint: &HomogeneousValue,
    kind: StructureKind,
    counter: u64,
) -> HomogeneousValue {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ counter);
    let theta: f64 = rng.random_range(0.0..core::f64::consts::TAU);
    let mag = match scale_hint.value() {
        Some(z) if z.norm() > 1e-3 && z.norm() < 1e3 => z.norm(),
        _ => 1.0,
    };
    match kind {
        StructureKind::Palindromic => {
            let r = if rng.random_bool(0.5) { 1.5 } else { 1.0 / 1.5 };
            HomogeneousValue::from_complex(Complex64::from_polar(r * mag, theta))
        }
        StructureKind::Alternating => {
            let re: f64 = rng.random_range(0.25..1.0);
            let s = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
            HomogeneousValue::from_complex(Complex64::new(s * re * mag, mag * libm::sin(theta)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn guard_examples() {
        let on = HomogeneousValue::from_complex(c(1.0, 0.0));
        let g = guard_shift(&on, StructureKind::Palindromic, 1e-3)
            .unwrap()
            .value()
            .unwrap();
        assert!((g - c(1.001, 0.0)).norm() < 1e-14);
        let inside = HomogeneousValue::from_complex(Complex64::from_polar(1.0 - 1e-5, 0.3));
        let g = guard_shift(&inside, StructureKind::Palindromic, 1e-3)
            .unwrap()
            .value()
            .unwrap();
        assert!((g.norm() - 0.999).abs() < 1e-14 && (g.arg() - 0.3).abs() < 1e-14);
        let far = HomogeneousValue::from_complex(c(2.0, 0.0));
        assert_eq!(
            guard_shift(&far, StructureKind::Palindromic, 1e-3).unwrap(),
            far
        );
        let i = HomogeneousValue::from_complex(c(0.0, 1.0));
        let g = guard_shift(&i, StructureKind::Alternating, 1e-3)
            .unwrap()
            .value()
            .unwrap();
        assert!((g - c(1e-3, 1.0)).norm() < 1e-15);
        assert!(guard_shift(
            &HomogeneousValue::infinity(),
            StructureKind::Alternating,
            1e-3
        )
        .is_err());
    }

    #[test]
    fn quadratic_and_wilkinson() {
        // diag(2, 3) against identity
        let a = [[c(2.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(3.0, 0.0)]];
        let b = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]];
        let r = quadratic_roots(a, b).unwrap();
        let mut v: alloc::vec::Vec<f64> = r.iter().map(|x| x.value().unwrap().re).collect();
        v.sort_by(|x, y| x.partial_cmp(y).unwrap());
        assert!((v[0] - 2.0).abs() < 1e-14 && (v[1] - 3.0).abs() < 1e-14);
        let near3 = HomogeneousValue::from_complex(c(2.9, 0.0));
        let w = wilkinson_shift(a, b, &near3).unwrap().value().unwrap();
        assert!((w - c(3.0, 0.0)).norm() < 1e-14);
        // i is chordally equidistant from 1 and -1
        let (p, m) = (
            HomogeneousValue::from_complex(c(1.0, 0.0)),
            HomogeneousValue::from_complex(c(-1.0, 0.0)),
        );
        let i = HomogeneousValue::from_complex(c(0.0, 1.0));
        assert_eq!(nearest(p, m, &i).value().unwrap(), c(-1.0, 0.0));
        assert_eq!(nearest(m, p, &i).value().unwrap(), c(-1.0, 0.0));
        let z = [[c(0.0, 0.0); 2]; 2];
        assert!(quadratic_roots(z, z).is_err());
    }

    #[test]
    fn quadratic_with_infinite_root() {
        // B singular: one root at infinity
        let a = [[c(1.0, 0.0), c(2.0, 0.0)], [c(3.0, 0.0), c(4.0, 0.0)]];
        let b = [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0)]];
        let r = quadratic_roots(a, b).unwrap();
        assert_eq!(r.iter().filter(|x| x.beta.norm() < 1e-15).count(), 1);
        assert!(r
            .iter()
            .any(|x| x.value().is_some_and(|z| (z - c(-0.5, 0.0)).norm() < 1e-14)));
    }
}
