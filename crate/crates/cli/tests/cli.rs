use std::f64::consts::PI;
use std::process::{Command, Output};

use lattice_telescope_cli::report::Report;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lattice-telescope"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn report(args: &[&str]) -> Report {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_str(&stdout(&out)).unwrap()
}

#[test]
fn theorem1_boundary_report() {
    let r = report(&[
        "sum", "--series", "theorem1", "--box", "500", "--method", "boundary", "--format", "json",
    ]);
    assert_eq!(r.series, "theorem1");
    assert_eq!(r.truncation, "box:500");
    assert_eq!(r.reference_value, Some(PI));
    assert!(r.rel_error.unwrap() <= 1e-4 / PI);
    assert!(r.tail_hint.is_some());
}

#[test]
fn mt_coprime_report() {
    let r = report(&[
        "sum",
        "--series",
        "mt",
        "--k",
        "2",
        "--n",
        "2",
        "--m",
        "2",
        "--coprime",
        "--bound",
        "2000",
    ]);
    assert_eq!(r.reference_value, Some(1.0 / 3.0));
    assert!(r.abs_error.unwrap() <= 1e-5);
}

#[test]
fn theorem3_report_has_axis_subtotal() {
    let r = report(&["sum", "--series", "theorem3", "--n", "6", "--box", "500"]);
    assert!((r.reference_value.unwrap() - PI).abs() < 1e-15);
    assert!(r.rel_error.unwrap() <= 5e-3);
    let axis = r.axis_ray_subtotal.unwrap();
    assert!(axis > 0.0 && axis < r.value);
}

#[test]
fn json_round_trip_is_byte_identical() {
    for args in [
        &["sum", "--series", "theorem2", "--box", "40"][..],
        &[
            "sum",
            "--series",
            "d111",
            "--coeff-box",
            "4",
            "--z-re",
            "-0.3",
            "--z-im",
            "1.2",
        ][..],
        &[
            "sum",
            "--series",
            "zagier-chain",
            "--coeff-box",
            "4",
            "--n",
            "3",
            "--box",
            "30",
            "--bound",
            "100",
        ][..],
    ] {
        let text = stdout(&run(args));
        let parsed: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(format!("{}\n", parsed.to_json().unwrap()), text, "{args:?}");
    }
}

#[test]
fn json_field_order() {
    let text = stdout(&run(&["sum", "--series", "tropical1", "--box", "10"]));
    let fields = [
        "series",
        "params",
        "truncation",
        "method",
        "value",
        "reference_value",
        "abs_error",
        "rel_error",
        "terms",
        "elapsed_ms",
        "tail_hint",
        "axis_ray_subtotal",
        "components",
    ];
    let pos: Vec<usize> = fields
        .iter()
        .map(|f| text.find(&format!("\"{f}\":")).unwrap())
        .collect();
    assert!(pos.windows(2).all(|w| w[0] < w[1]));
}

#[test]
fn csv_output() {
    let out = run(&[
        "sum", "--series", "theorem1", "--box", "20", "--format", "csv",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader.headers().unwrap().clone();
    assert_eq!(&header[0], "series");
    let row = reader.records().next().unwrap().unwrap();
    assert_eq!(&row[0], "theorem1");
    let value: f64 = row[4].parse().unwrap();
    assert!((value - PI).abs() < 1e-3);
}

#[test]
fn threads_agree_with_sequential() {
    let a = report(&[
        "sum", "--series", "theorem1", "--box", "300", "--method", "direct",
    ]);
    let b = report(&[
        "sum",
        "--series",
        "theorem1",
        "--box",
        "300",
        "--method",
        "direct",
        "--threads",
        "4",
    ]);
    assert!((a.value - b.value).abs() <= 1e-12 * a.value);
    assert_eq!(a.terms, b.terms);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["sum", "--series", "nope", "--box", "3"][..],
        &["sum", "--series", "theorem3", "--box", "3"][..],
        &["sum", "--series", "theorem4", "--coeff-box", "3"][..],
        &["sum", "--series", "theorem1"][..],
        &[
            "sum", "--series", "mt", "--k", "1", "--n", "1", "--m", "0", "--bound", "10",
        ][..],
        &[
            "sum",
            "--series",
            "eisenstein",
            "--s",
            "1",
            "--coeff-box",
            "3",
        ][..],
        &[
            "sum",
            "--series",
            "theorem1",
            "--box",
            "3",
            "--threads",
            "0",
        ][..],
        &["sum", "--series", "theorem1", "--box", "3", "--bogus"][..],
        &[
            "sum", "--series", "theorem1", "--box", "201", "--method", "oracle",
        ][..],
        &["bench", "--series", "d111"][..],
        &["dump", "--kind", "oracle", "--box", "500"][..],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn verify_fast_passes_and_tamper_fails() {
    let ok = run(&["verify", "--level", "fast"]);
    let text = stdout(&ok);
    assert_eq!(ok.status.code(), Some(0), "{text}");
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 12);
    let tampered = run(&["verify", "--level", "fast", "--tamper", "1e-3"]);
    assert_eq!(tampered.status.code(), Some(1));
    assert!(stdout(&tampered).lines().any(|l| l.starts_with("FAIL")));
}

#[test]
fn bench_csv_rows() {
    let out = run(&["bench", "--series", "theorem1", "--ladder", "20,40"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("N,method,value,abs_error,terms,time_ms"));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 6);
    assert_eq!(
        rows.iter().map(|r| r[1]).collect::<Vec<_>>(),
        ["direct", "boundary", "oracle"].repeat(2)
    );
    let err = |i: usize| rows[i][3].parse::<f64>().unwrap();
    assert!(err(4) < err(1));
}

#[test]
fn dump_tree_matches_oracle() {
    let mut tree: Vec<String> = stdout(&run(&["dump", "--kind", "tree", "--box", "12"]))
        .lines()
        .map(String::from)
        .collect();
    let mut oracle: Vec<String> = stdout(&run(&["dump", "--kind", "oracle", "--box", "12"]))
        .lines()
        .map(String::from)
        .collect();
    tree.sort();
    oracle.sort();
    assert_eq!(tree, oracle);
    assert!(tree.iter().all(|l| l.ends_with(" 1")));
    let detn = stdout(&run(&["dump", "--kind", "detn", "--box", "6", "--n", "3"]));
    let mut a: Vec<_> = detn.lines().collect();
    let detn_oracle = stdout(&run(&[
        "dump",
        "--kind",
        "detn-oracle",
        "--box",
        "6",
        "--n",
        "3",
    ]));
    let mut b: Vec<_> = detn_oracle.lines().collect();
    a.sort();
    b.sort();
    assert_eq!(a, b);
    assert!(a.iter().all(|l| l.ends_with(" 3")));
}
