use palqz_core::moves::{MoveSite, SwapControl, Window};
use palqz_core::pencil::{gen_random_alternating, gen_random_palindromic};
use palqz_core::solver::guard_shift;
use palqz_core::verify::{match_eigensets, oracle_eigenvalues, subspace_check};
use palqz_core::{
    solve, CMatrix, Complex64, HomogeneousValue, SolverOptions, StructureKind, StructuredPencil,
};
use proptest::prelude::*;

fn pencil(kind: bool, n: usize, seed: u64) -> StructuredPencil {
    if kind {
        gen_random_palindromic(n, seed)
    } else {
        gen_random_alternating(n, seed)
    }
}

/// One full sweep with shift `rho` on the whole pencil, returning `Q`.
fn one_sweep(p: &mut StructuredPencil, rho: &HomogeneousValue) -> CMatrix {
    let m = p.n();
    let mut q = CMatrix::identity(m);
    let mut site = MoveSite::new(p, Window::full(m), Some(&mut q));
    let s1 = site.pole(1);
    site.move_i(rho).unwrap();
    let (inward, outward) = if m % 2 == 1 {
        ((m - 1) / 2, (m + 3) / 2)
    } else {
        (m / 2 - 1, m / 2 + 2)
    };
    for k in 2..=inward {
        site.move_ii(k).unwrap();
    }
    site.middle_swap(&SwapControl::default()).unwrap();
    for k in outward..m {
        site.move_ii(k).unwrap();
    }
    site.move_i(&s1).unwrap();
    q
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solver_matches_oracle(kind in any::<bool>(), n in 1usize..=8, seed in 0u64..10_000) {
        let p = pencil(kind, n, seed);
        let mut opts = SolverOptions::default();
        opts.accumulate_q = true;
        let r = solve(&p, &opts).unwrap();
        let d = match_eigensets(&r.values(), &oracle_eigenvalues(&p).unwrap()).unwrap();
        prop_assert!(d <= 1e-8, "mismatch {}", d);
        prop_assert!(r.backward_error.unwrap() <= 1e-13);
    }

    #[test]
    fn partners_are_companions(kind in any::<bool>(), n in 2usize..=14, seed in 0u64..10_000) {
        let p = pencil(kind, n, seed);
        let r = solve(&p, &SolverOptions::default()).unwrap();
        prop_assert_eq!(r.eigenvalues.len(), n);
        for (i, e) in r.eigenvalues.iter().enumerate() {
            match e.partner {
                Some(j) => {
                    prop_assert_eq!(r.eigenvalues[j].partner, Some(i));
                    let c = e.value.companion(r.kind);
                    prop_assert_eq!(r.eigenvalues[j].value.alpha, c.alpha);
                    prop_assert_eq!(r.eigenvalues[j].value.beta, c.beta);
                }
                None => prop_assert!(e.value.self_pair_distance(r.kind) <= 1e-12),
            }
        }
    }

    #[test]
    fn sweep_performs_subspace_iteration(kind in any::<bool>(), n in 3usize..=12, seed in 0u64..10_000,
                                         re in -2.0..2.0f64, im in -2.0..2.0f64) {
        let p0 = pencil(kind, n, seed);
        let mut p = p0.clone();
        let rho = guard_shift(&HomogeneousValue::from_complex(Complex64::new(re, im)), p.kind(), 1e-3).unwrap();
        let q = one_sweep(&mut p, &rho);
        let rt = rho.companion(p.kind());
        let sines = subspace_check(p0.a(), p0.b(), &rho, &rt, &q).unwrap();
        let worst = sines.iter().cloned().fold(0.0, f64::max);
        prop_assert!(worst <= 1e-8, "angle {}", worst);
    }
}

#[test]
fn subspace_iteration_at_odd_and_even_middles() {
    for kind in [StructureKind::Palindromic, StructureKind::Alternating] {
        for n in [9, 10] {
            let p0 = pencil(kind == StructureKind::Palindromic, n, 1);
            let mut p = p0.clone();
            let rho = guard_shift(
                &HomogeneousValue::from_complex(Complex64::new(0.3, 0.8)),
                kind,
                1e-3,
            )
            .unwrap();
            let q = one_sweep(&mut p, &rho);
            let sines = subspace_check(p0.a(), p0.b(), &rho, &rho.companion(kind), &q).unwrap();
            assert_eq!(sines.len(), n - 1);
            assert!(
                sines.iter().all(|&s| s <= 1e-10),
                "{kind:?} n={n}: {sines:?}"
            );
        }
    }
}

#[test]
fn guard_moves_self_paired_shift() {
    // a shift on the unit circle is its own companion: the iteration goes nowhere
    let rho = HomogeneousValue::from_complex(Complex64::from_polar(1.0, 0.4));
    let rt = rho.companion(StructureKind::Palindromic);
    assert!(rho.chordal_distance(&rt) < 1e-15);
    assert!(
        guard_shift(&rho, StructureKind::Palindromic, 1e-3)
            .unwrap()
            .chordal_distance(&rho)
            > 1e-4
    );
}
