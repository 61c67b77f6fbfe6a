use super::*;
use crate::pencil::{
    gen_random_alternating, gen_random_palindromic, gen_stress_2x2, StructureKind,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn hv(z: Complex64) -> HomogeneousValue {
    HomogeneousValue::from_complex(z)
}

fn close(x: &HomogeneousValue, y: &HomogeneousValue, tol: f64) -> bool {
    x.chordal_distance(y) <= tol
}

/// Runs `f` on a full-window site with Q accumulated and checks `Q^*AQ` densely.
fn with_q(p: &mut StructuredPencil, f: impl FnOnce(&mut MoveSite<'_>)) {
    let n = p.n();
    let (a0, b0) = (p.a().clone(), p.b().clone());
    let mut q = CMatrix::identity(n);
    {
        let mut site = MoveSite::new(p, Window::full(n), Some(&mut q));
        f(&mut site);
    }
    let qa = q.adjoint().mul(&a0).mul(&q);
    let qb = q.adjoint().mul(&b0).mul(&q);
    let tol = 1e-13 * a0.frobenius_norm();
    assert!(
        qa.sub(p.a()).frobenius_norm() < tol,
        "A drift {}",
        qa.sub(p.a()).frobenius_norm()
    );
    assert!(qb.sub(p.b()).frobenius_norm() < tol);
    assert!(q.mul(&q.adjoint()).sub(&CMatrix::identity(n)).max_abs() < 1e-14);
}

#[test]
fn move_i_places_shift_and_companion() {
    for kind in [StructureKind::Palindromic, StructureKind::Alternating] {
        for n in [3, 4, 7, 10] {
            let mut p = if kind == StructureKind::Palindromic {
                gen_random_palindromic(n, 5)
            } else {
                gen_random_alternating(n, 5)
            };
            let before = p.poles().unwrap();
            let rho = hv(c(0.7, 1.9));
            with_q(&mut p, |s| {
                s.move_i(&rho).unwrap();
            });
            let after = p.poles().unwrap();
            assert!(close(&after[0], &rho, 1e-13));
            assert!(close(&after[n - 2], &rho.companion(kind), 1e-13));
            for k in 1..n - 2 {
                assert!(close(&after[k], &before[k], 1e-13));
            }
            assert_eq!(p.validate().max_shape_violation, 0.0);
        }
    }
}

#[test]
fn move_i_inserting_current_pole_is_fine() {
    let mut p = gen_random_palindromic(5, 1);
    let s1 = p.pole_at(1).unwrap();
    move_i(&mut p, &s1).unwrap();
    assert!(close(&p.pole_at(1).unwrap(), &s1, 1e-13));
}

#[test]
fn move_ii_transposes_poles() {
    for kind in [StructureKind::Palindromic, StructureKind::Alternating] {
        for n in [5, 7, 8, 11, 12] {
            let mut p = if kind == StructureKind::Palindromic {
                gen_random_palindromic(n, 9)
            } else {
                gen_random_alternating(n, 9)
            };
            for k in 2..n {
                if !(2 * k < n || 2 * k > n + 2) {
                    assert_eq!(move_ii(&mut p, k), Err(Error::MiddleIndex(k)));
                    continue;
                }
                let before = p.poles().unwrap();
                with_q(&mut p, |s| {
                    s.move_ii(k).unwrap();
                });
                let after = p.poles().unwrap();
                let (i, j) = (k - 2, k - 1);
                assert!(close(&after[i], &before[j], 1e-11), "n={n} k={k}");
                assert!(close(&after[j], &before[i], 1e-11));
                for t in 0..n - 1 {
                    let mirrored = [n - 1 - k, n - k];
                    if t != i && t != j && !mirrored.contains(&t) {
                        assert!(close(&after[t], &before[t], 1e-11));
                    }
                }
                let r = p.validate();
                assert_eq!(r.max_shape_violation, 0.0);
                assert!(r.is_valid(10.0), "{r:?}");
            }
        }
    }
}

#[test]
fn move_ii_index_errors() {
    let mut p = gen_random_palindromic(6, 0);
    assert!(matches!(move_ii(&mut p, 1), Err(Error::Index { .. })));
    assert!(matches!(move_ii(&mut p, 6), Err(Error::Index { .. })));
}

#[test]
fn iio_worked_example() {
    // block [[0, 2], [1, 1]] of a 3x3 palindromic pencil
    let a = CMatrix::from_vec(
        3,
        3,
        vec![
            c(0.0, 0.0),
            c(2.0, 0.0),
            c(0.5, 0.0),
            c(1.0, 0.0),
            c(1.0, 0.0),
            c(0.25, 0.0),
            c(3.0, 0.0),
            c(0.1, 0.0),
            c(1.0, 0.0),
        ],
    )
    .unwrap();
    let mut p = StructuredPencil::palindromic(a).unwrap();
    assert!(close(&p.pole_at(1).unwrap(), &hv(c(0.5, 0.0)), 1e-15));
    let out = move_iio(&mut p, 10).unwrap();
    let g = out.cores[0];
    let r = 10f64.sqrt();
    assert!((g.c - c(-1.0 / r, 0.0)).norm() < 1e-15 && (g.s - c(3.0 / r, 0.0)).norm() < 1e-15);
    assert_eq!(g.s.im, 0.0);
    assert!(close(&p.pole_at(1).unwrap(), &hv(c(2.0, 0.0)), 1e-14));
    assert!(close(&p.pole_at(2).unwrap(), &hv(c(0.5, 0.0)), 1e-14));
}

#[test]
fn middle_swaps_on_random_pencils() {
    for kind in [StructureKind::Palindromic, StructureKind::Alternating] {
        for n in 3..=12 {
            for seed in 0..4 {
                let mut p = if kind == StructureKind::Palindromic {
                    gen_random_palindromic(n, seed)
                } else {
                    gen_random_alternating(n, seed)
                };
                let before = p.poles().unwrap();
                let mut out = None;
                with_q(&mut p, |s| {
                    out = Some(s.middle_swap(&SwapControl::default()).unwrap())
                });
                let out = out.unwrap();
                assert!(out.converged);
                let after = p.poles().unwrap();
                let (i, j) = if n % 2 == 1 {
                    ((n - 3) / 2, (n - 1) / 2)
                } else {
                    (n / 2 - 2, n / 2)
                };
                assert!(
                    close(&after[i], &before[j], 1e-10),
                    "n={n} seed={seed} {kind:?}"
                );
                assert!(close(&after[j], &before[i], 1e-10));
                if n % 2 == 0 {
                    assert!(close(&after[n / 2 - 1], &before[n / 2 - 1], 1e-10));
                }
                assert!(p.validate().is_valid(10.0));
            }
        }
    }
}

#[test]
fn iio_core_is_real_for_palindromic() {
    for seed in 0..20 {
        let mut p = gen_random_palindromic(5, seed);
        let mut site = MoveSite::new(&mut p, Window::full(5), None);
        let out = site
            .middle_swap(&SwapControl {
                max_refines: 0,
                tol_factor: 10.0,
            })
            .unwrap();
        assert_eq!(out.cores[0].s.im, 0.0);
    }
}

#[test]
fn parity_errors() {
    let mut p = gen_random_palindromic(6, 0);
    assert!(matches!(move_iio(&mut p, 10), Err(Error::Parity(_))));
    let mut p = gen_random_palindromic(7, 0);
    assert!(matches!(move_iie(&mut p, 10), Err(Error::Parity(_))));
    assert!(matches!(refine_iie(&mut p), Err(Error::Parity(_))));
}

#[test]
fn coincident_middle_poles_refused() {
    // g = 0: the two poles of the 2x2 stress block are identical
    let mut p = gen_stress_2x2(0.0, 4);
    assert_eq!(move_iio(&mut p, 10).unwrap_err(), Error::CoincidentPoles);
}

#[test]
fn refinement_after_planted_residual() {
    for n in [5, 6, 9, 10] {
        let mut p = gen_random_palindromic(n, 21);
        let mut site = MoveSite::new(&mut p, Window::full(n), None);
        site.middle_swap(&SwapControl::default()).unwrap();
        let c0 = middle_corner(Window::full(n));
        let eps = c(1e-8, -0.5e-8) * site.middle_residual().norm_a;
        {
            let (a, b) = site.pencil.parts_mut();
            a[(c0, c0)] = eps;
            b[(c0, c0)] = eps.conj();
        }
        let r0 = site.middle_residual().relative();
        let r1 = site.refine_middle().unwrap().relative();
        assert!(r1 <= r0 / 100.0, "n={n}: {r0} -> {r1}");
    }
}
