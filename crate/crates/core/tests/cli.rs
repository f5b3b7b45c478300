use std::process::Command;

fn caputo(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_caputo"))
        .args(args)
        .output()
        .unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn column(csv: &str, row: usize, col: usize) -> f64 {
    csv.lines()
        .nth(row + 1)
        .unwrap()
        .split(',')
        .nth(col)
        .unwrap()
        .parse()
        .unwrap()
}

#[test]
fn eval_matches_library() {
    let (code, out, _) = caputo(&[
        "eval", "--fn", "sin", "--n", "1", "--beta", "1", "--alpha", "0.5", "--x", "1",
    ]);
    assert_eq!(code, 0);
    let lib = caputo::catalog::caputo(
        &caputo::catalog::CatalogEntry::new(caputo::catalog::FunctionKind::SinPow)
            .request(0.5, 1.0),
        &caputo::PrecisionConfig::default(),
    )
    .unwrap();
    assert_eq!(column(&out, 0, 2), lib.value);
}

#[test]
fn exit_codes() {
    assert_eq!(
        caputo(&["eval", "--fn", "arcsin", "--alpha", "0.5", "--x", "1.5"]).0,
        2
    );
    assert_eq!(
        caputo(&["eval", "--fn", "sin", "--alpha", "1.5", "--x", "1"]).0,
        2
    );
    assert_eq!(
        caputo(&["eval", "--fn", "tan", "--alpha", "0.5", "--x", "1"]).0,
        2
    );
    assert_eq!(caputo(&["figure", "7"]).0, 2);
    assert_eq!(caputo(&["eval", "--fn", "sin"]).0, 2);
    // a one-term budget cannot sum a nontrivial series
    assert_eq!(
        caputo(&["--tol", "1e-300", "eval", "--fn", "exp", "--alpha", "0.5", "--x", "2"]).0,
        3
    );
}

#[test]
fn figure_caption_rows() {
    let (code, out, _) = caputo(&["figure", "3a", "--points", "4", "--alpha", "0"]);
    assert_eq!(code, 0);
    assert_eq!(column(&out, 1, 0), 1.0);
    assert!((column(&out, 1, 2) - ((-1f64).exp() - 1.0)).abs() < 1e-16);
    let (_, out, _) = caputo(&["figure", "1a", "--points", "3", "--alpha", "0.5"]);
    assert_eq!(column(&out, 0, 2), 0.0);
}

#[test]
fn output_file_is_bit_identical() {
    let dir = std::env::temp_dir();
    let a = dir.join(format!("caputo-fig5-a-{}.csv", std::process::id()));
    let b = dir.join(format!("caputo-fig5-b-{}.csv", std::process::id()));
    for p in [&a, &b] {
        assert_eq!(
            caputo(&["figure", "5", "--output", p.to_str().unwrap()]).0,
            0
        );
    }
    let (ra, rb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let _ = (std::fs::remove_file(&a), std::fs::remove_file(&b));
    assert_eq!(ra, rb);
    assert_eq!(String::from_utf8(ra).unwrap().lines().count(), 1 + 101 * 5);
}

#[test]
fn compare_sine_residual() {
    let (code, out, _) = caputo(&["compare", "--fn", "sin", "--alpha", "0.5", "--x", "40"]);
    assert_eq!(code, 0);
    let scaled = column(&out, 0, 5);
    assert!((0.85..=1.15).contains(&scaled), "{scaled}");
}

#[test]
fn compare_gaussian_routes() {
    let (code, out, _) = caputo(&[
        "compare",
        "--fn",
        "gaussian",
        "--alpha",
        "0.3,1",
        "--x-range",
        "-2,2,9",
    ]);
    assert_eq!(code, 0);
    for row in 0..18 {
        assert!(column(&out, row, 6).abs() <= 1e-10);
    }
    // order 1: every route is the classical derivative
    let x = column(&out, 1, 0);
    let d = -2.0 * x * (-x * x).exp();
    for col in [3, 4, 5] {
        assert!((column(&out, 1, col) - d).abs() < 1e-6);
    }
}

#[test]
fn eit_check_sine_passes() {
    let (code, out, _) = caputo(&[
        "eit-check",
        "--fn",
        "sin",
        "--alpha",
        "0.1,0.5,0.9",
        "--x",
        "0,0.5,2",
    ]);
    assert_eq!(code, 0, "{out}");
}
