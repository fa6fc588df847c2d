use pentagf::cli::{run, EXIT_CHECK_FAILED, EXIT_OK, EXIT_USAGE};

fn pentagf(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("pentagf").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

#[test]
fn reduce_example() {
    let (code, out, _) = pentagf(&["reduce", "--shape", "2,1", "100"]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "9\n"));
}

#[test]
fn reduce_rejects_oversize_and_malformed_input() {
    // 2m = 10 bits for m = 5
    let (code, _, err) = pentagf(&["reduce", "--shape", "2,1", "200"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("error"));
    let (code, ..) = pentagf(&["reduce", "--shape", "2,1", "xyz"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn mul_by_one_is_identity() {
    let (code, out, _) = pentagf(&["mul", "--shape", "74,15", "1", "1F3A"]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "1F3A\n"));
    let (code, out, _) = pentagf(&["mul", "--shape", "2,1", "10", "10"]);
    assert_eq!((code, out.as_str()), (EXIT_OK, "9\n"));
}

#[test]
fn mul_needs_an_irreducible_shape() {
    let (code, _, err) = pentagf(&["mul", "--shape", "3,1", "1", "1"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("reducible"));
}

#[test]
fn invalid_shape_is_a_usage_error() {
    let (code, _, err) = pentagf(&["verify", "--shape", "3,3"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("b > c"));
}

#[test]
fn enumerate_small_bounds() {
    let (code, out, _) = pentagf(&["enumerate", "--max-degree", "5"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(
        out,
        "m,b,c,subfamily,red_xor\n5,2,1,c_equals_1,13\nb≠2c: 0, b=2c: 1, total: 1\n"
    );
    let (code, out, _) = pentagf(&["enumerate", "--max-degree", "4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "m,b,c,subfamily,red_xor\nb≠2c: 0, b=2c: 0, total: 0\n");
}

#[test]
fn enumerate_writes_csv_file() {
    let dir = std::env::temp_dir().join(format!("pentagf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("members.csv");
    let (code, out, _) = pentagf(&[
        "enumerate",
        "--max-degree",
        "40",
        "--csv",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    let csv = std::fs::read_to_string(&path).unwrap();
    assert!(csv.starts_with("m,b,c,subfamily,red_xor\n5,2,1,"));
    assert!(out.starts_with("b≠2c: "));
    std::fs::remove_dir_all(&dir).unwrap();

    let (code, _, err) = pentagf(&[
        "enumerate",
        "--max-degree",
        "10",
        "--csv",
        "/nonexistent/dir/x.csv",
    ]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("cannot write"));
}

#[test]
fn verify_is_exhaustive_for_degree_five() {
    let (code, out, _) = pentagf(&["verify", "--shape", "2,1", "--trials", "512"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("exhaustive"));
    assert!(out.contains("XORs counted 6656, formula 13 x 512 = 6656"));
}

#[test]
fn verify_is_reproducible() {
    let args = [
        "verify", "--shape", "74,15", "--trials", "200", "--seed", "42",
    ];
    let (code, first, _) = pentagf(&args);
    assert_eq!(code, EXIT_OK);
    assert!(first.contains("seed 42"));
    assert_eq!(pentagf(&args).1, first);
}

#[test]
fn verify_handles_reducible_shapes() {
    let (code, out, _) = pentagf(&["verify", "--shape", "3,1", "--trials", "50"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("skipped"));
}

#[test]
fn cost_for_a_shape() {
    let (code, out, _) = pentagf(&["cost", "--shape", "62,31"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert_eq!(
        lines.next(),
        Some("m,b,c,mul_xor,mul_and,red_xor,total_xor,depth")
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(&row[..3], &["155", "62", "31"]);
    assert_eq!(row[5], "371");
}

#[test]
fn cost_nist_table() {
    let (code, out, _) = pentagf(&["cost", "--nist"]);
    assert_eq!(code, EXIT_OK);
    let rows: Vec<Vec<&str>> = out
        .lines()
        .skip(1)
        .map(|l| l.split(',').collect())
        .collect();
    let red: Vec<&str> = rows.iter().map(|r| r[5]).collect();
    assert_eq!(red, ["487", "847", "1711"]);
    // smallest b per degree
    assert_eq!(&rows[0][..3], &["163", "63", "37"]);
}

#[test]
fn constant_series_csv() {
    let (code, out, _) = pentagf(&["cost", "--constant-series", "40"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("m,C"));
    assert_eq!(lines.clone().filter(|l| !l.starts_with("max")).count(), 39);
    assert!(lines.next().unwrap().starts_with("2,"));
}

#[test]
fn cost_requires_exactly_one_mode() {
    assert_eq!(pentagf(&["cost"]).0, EXIT_USAGE);
    assert_eq!(pentagf(&["cost", "--nist", "--shape", "2,1"]).0, EXIT_USAGE);
}

#[test]
fn help_and_version_exit_cleanly() {
    let (code, out, _) = pentagf(&["--help"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("enumerate"));
    assert_ne!(EXIT_CHECK_FAILED, EXIT_OK);
}
