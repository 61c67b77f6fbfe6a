use super::*;
use crate::pencil::{gen_random_alternating, gen_random_palindromic};
use crate::verify::{match_eigensets, oracle_eigenvalues};

fn opts_q() -> SolverOptions {
    SolverOptions {
        accumulate_q: true,
        ..SolverOptions::default()
    }
}

#[test]
fn small_pencils_match_oracle() {
    for n in 1..=14 {
        for seed in 0..6 {
            for p in [
                gen_random_palindromic(n, seed),
                gen_random_alternating(n, seed),
            ] {
                let r = solve(&p, &opts_q()).unwrap();
                assert_eq!(r.eigenvalues.len(), n);
                let d = match_eigensets(&r.values(), &oracle_eigenvalues(&p).unwrap()).unwrap();
                assert!(
                    d < 1e-9,
                    "n={n} seed={seed} {:?}: {d}, centre {}",
                    p.kind(),
                    r.center_len
                );
                assert!(
                    r.backward_error.unwrap() < 1e-13,
                    "be {}",
                    r.backward_error.unwrap()
                );
            }
        }
    }
}

#[test]
fn partners_are_exact_companions() {
    let p = gen_random_palindromic(15, 4);
    let r = solve(&p, &SolverOptions::default()).unwrap();
    for (i, e) in r.eigenvalues.iter().enumerate() {
        match e.partner {
            Some(j) => {
                let c = r.eigenvalues[j].value.companion(r.kind);
                assert_eq!(c.alpha, e.value.alpha, "{i}");
                assert_eq!(c.beta, e.value.beta);
                assert_eq!(r.eigenvalues[j].partner, Some(i));
            }
            None => assert!(e.value.self_pair_distance(r.kind) < 1e-12),
        }
    }
}

#[test]
fn option_validation() {
    let p = gen_random_palindromic(4, 0);
    let bad = SolverOptions {
        shift_guard_gap: 1.5,
        ..SolverOptions::default()
    };
    assert!(matches!(solve(&p, &bad), Err(Error::Guard(_))));
}
