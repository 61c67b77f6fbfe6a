//! Deterministic test pencils.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{in_zero_triangle, StructureKind, StructuredPencil};
use crate::matrix::CMatrix;

/// Random palindromic anti-Hessenberg pencil, entries `2·N(0,1) + i·N(0,1)`.
///
/// Nonzero entries are drawn row-major, real part first, from ChaCha8 seeded
/// with `seed`.
pub fn gen_random_palindromic(n: usize, seed: u64) -> StructuredPencil {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut a = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            if in_zero_triangle(n, i, j) {
                continue;
            }
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            a[(i, j)] = Complex64::new(2.0 * re, im);
        }
    }
    let b = a.adjoint();
    StructuredPencil::from_raw_parts(a, b, StructureKind::Palindromic)
}

/// Cayley image of [`gen_random_palindromic`].
pub fn gen_random_alternating(n: usize, seed: u64) -> StructuredPencil {
    gen_random_palindromic(n, seed)
        .cayley()
        .expect("cayley of a palindromic pencil")
}

/// `s1·10^t1 + i·s2·10^t2`, signs uniform, exponents uniform on `[-15, 0]`.
pub fn stress_entry<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let mut part = || {
        let t: f64 = rng.random_range(-15.0..=0.0);
        let s = if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        s * libm::pow(10.0, t)
    };
    let re = part();
    let im = part();
    Complex64::new(re, im)
}

fn with_border(
    n: usize,
    block: &[(usize, usize, Complex64)],
    border: &[Complex64],
) -> StructuredPencil {
    let mut a = CMatrix::zeros(n, n);
    for &(i, j, v) in block {
        a[(i, j)] = v;
    }
    let mut it = border.iter();
    for j in 0..n {
        a[(n - 1, j)] = *it.next().expect("border length");
    }
    for i in 0..n - 1 {
        a[(i, n - 1)] = *it.next().expect("border length");
    }
    let b = a.adjoint();
    StructuredPencil::from_raw_parts(a, b, StructureKind::Palindromic)
}

/// `n = 3` palindromic pencil whose leading 2×2 block of `A` is `[[0, a], [a(1+g), c]]`.
///
/// `border` fills row 3 then column 3 (rows 1..2). Poles are `a(1+g)/conj(a)` and its companion.
pub fn stress_pencil_2x2(
    g: f64,
    a: Complex64,
    c: Complex64,
    border: &[Complex64; 5],
) -> StructuredPencil {
    let z = Complex64::new(0.0, 0.0);
    with_border(
        3,
        &[(0, 0, z), (0, 1, a), (1, 0, a * (1.0 + g)), (1, 1, c)],
        border,
    )
}

/// `n = 4` palindromic pencil whose leading 3×3 block of `A` is
/// `[[0, 0, a], [0, b, c], [a(1+g), d, e]]`. `border` fills row 4 then column 4.
pub fn stress_pencil_3x3(g: f64, e: &[Complex64; 5], border: &[Complex64; 7]) -> StructuredPencil {
    let [a, b, c, d, ee] = *e;
    with_border(
        4,
        &[
            (0, 2, a),
            (1, 1, b),
            (1, 2, c),
            (2, 0, a * (1.0 + g)),
            (2, 1, d),
            (2, 2, ee),
        ],
        border,
    )
}

pub fn gen_stress_2x2(g: f64, seed: u64) -> StructuredPencil {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let a = stress_entry(&mut rng);
    let c = stress_entry(&mut rng);
    let border: [Complex64; 5] = core::array::from_fn(|_| stress_entry(&mut rng));
    stress_pencil_2x2(g, a, c, &border)
}

pub fn gen_stress_3x3(g: f64, seed: u64) -> StructuredPencil {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let e: [Complex64; 5] = core::array::from_fn(|_| stress_entry(&mut rng));
    let border: [Complex64; 7] = core::array::from_fn(|_| stress_entry(&mut rng));
    stress_pencil_3x3(g, &e, &border)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_pencils_are_structured_and_reproducible() {
        for n in [1, 2, 3, 6, 11] {
            let p = gen_random_palindromic(n, 7);
            let r = p.validate();
            assert_eq!(r.max_shape_violation, 0.0);
            assert_eq!(r.max_structure_violation, 0.0);
            assert_eq!(p.a(), gen_random_palindromic(n, 7).a());
        }
        assert_ne!(
            gen_random_palindromic(5, 1).a(),
            gen_random_palindromic(5, 2).a()
        );
        let q = gen_random_alternating(6, 3);
        assert!(q.validate().is_valid(10.0));
    }

    #[test]
    fn stress_poles() {
        let g = 1e-3;
        let p = gen_stress_2x2(g, 11);
        let s1 = p.pole_at(1).unwrap().value().unwrap();
        let s2 = p.pole_at(2).unwrap().value().unwrap();
        assert!(((s1.norm() - 1.0) - g).abs() < 1e-12);
        assert!((s1 * s2.conj() - 1.0).norm() < 1e-12);
        let q = gen_stress_3x3(g, 11);
        assert!(q.validate().is_valid(10.0));
        let mid = q.pole_at(2).unwrap().value().unwrap();
        assert!((mid.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn stress_entries_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..1000 {
            let z = stress_entry(&mut rng);
            for v in [z.re.abs(), z.im.abs()] {
                assert!((1e-15 * (1.0 - 1e-12)..=1.0).contains(&v));
            }
        }
    }
}
