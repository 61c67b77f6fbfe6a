use std::path::Path;

use palqz::mtx::{parse, read_matrix, to_string, write_matrix};
use palqz::CliError;
use palqz_core::{CMatrix, Complex64};
use proptest::prelude::*;

fn finite() -> impl Strategy<Value = f64> {
    prop_oneof![
        any::<f64>().prop_filter("finite", |x| x.is_finite()),
        -1e3..1e3f64,
        Just(0.0),
        Just(-0.0),
        Just(f64::MIN_POSITIVE),
        Just(5e-324),
    ]
}

proptest! {
    #[test]
    fn round_trip_is_bitwise(n in 1usize..7, vals in prop::collection::vec((finite(), finite()), 36)) {
        let m = CMatrix::from_fn(n, n, |i, j| {
            let (re, im) = vals[i * 6 + j];
            Complex64::new(re, im)
        });
        let back = parse(&to_string(&m), Path::new("mem")).unwrap();
        for i in 0..n {
            for j in 0..n {
                prop_assert_eq!(back[(i, j)].re.to_bits(), m[(i, j)].re.to_bits());
                prop_assert_eq!(back[(i, j)].im.to_bits(), m[(i, j)].im.to_bits());
            }
        }
    }
}

#[test]
fn file_round_trip_of_random_pencil() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("a.mtx");
    let a = palqz_core::pencil::gen_random_palindromic(8, 3).a().clone();
    write_matrix(&path, &a).unwrap();
    assert_eq!(read_matrix(&path).unwrap(), a);
}

#[test]
fn rejects_bad_input() {
    let p = Path::new("bad.mtx");
    let e = parse("%%MatrixMarket matrix array real general\n1 1\n1\n", p).unwrap_err();
    assert!(matches!(e, CliError::Parse { line: 1, .. }));
    assert_eq!(e.exit_code(), 1);
    let e = parse("%%MatrixMarket matrix array complex general\n2 3\n", p).unwrap_err();
    assert!(matches!(e, CliError::Parse { .. }), "{e:?}");
    let body: String = (0..6).map(|k| format!("{k} 0\n")).collect();
    let e = parse(
        &format!("%%MatrixMarket matrix array complex general\n2 3\n{body}"),
        p,
    )
    .unwrap_err();
    assert!(matches!(e, CliError::Shape(_)));
    assert_eq!(e.exit_code(), 2);
    let e = parse(
        "%%MatrixMarket matrix array complex general\n1 1\nnan 0\n",
        p,
    )
    .unwrap_err();
    assert!(matches!(
        e,
        CliError::Parse {
            line: 3,
            column: 1,
            ..
        }
    ));
}
