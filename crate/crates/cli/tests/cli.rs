use std::path::PathBuf;
use std::process::Command;

use cnct_cli::report::Report;
use cnct_cli::tables::TABLE_IDS;

struct Run {
    stdout: String,
    stderr: String,
    code: i32,
}

fn cnct(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_cnct"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
        code: out.status.code().unwrap(),
    }
}

fn golden(id: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("table_{}.csv", id.replace('.', "_")))
}

fn last_row(text: &str) -> &str {
    let table = text.split("\n\n").nth(1).expect("table block");
    table.lines().last().unwrap()
}

fn term_file(name: &str, lines: impl IntoIterator<Item = String>) -> tempfile::TempPath {
    let mut f = tempfile::Builder::new().prefix(name).tempfile().unwrap();
    for l in lines {
        std::io::Write::write_all(&mut f, format!("{l}\n").as_bytes()).unwrap();
    }
    f.into_temp_path()
}

#[test]
fn csv_output_matches_golden_files() {
    for id in TABLE_IDS {
        let run = cnct(&["table", id, "--format", "csv"]);
        assert_eq!(run.code, 0, "{id}: {}", run.stderr);
        let want = std::fs::read_to_string(golden(id)).unwrap();
        assert!(
            run.stdout == want,
            "table {id} differs from its golden file"
        );
    }
}

#[test]
fn json_round_trips_to_identical_text() {
    let cases: &[&[&str]] = &[
        &["zeta", "--z", "1.01", "--orders", "15", "--scale", "1e-3"],
        &["zeta", "--z", "0.5+13.7i"],
        &["polylog", "--s", "2", "--z", "-0.5"],
        &["table", "4.2", "--check"],
        &["table", "7.1", "--check"],
        &[
            "bessel-sum",
            "--r",
            "0.9999",
            "--y",
            "0.7",
            "--max-order",
            "5",
        ],
    ];
    for args in cases {
        let text = cnct(args);
        let json = cnct(&[*args, &["--format", "json"][..]].concat());
        assert_eq!(text.code, json.code);
        let report = Report::from_json(&json.stdout).unwrap();
        assert!(report.to_text() == text.stdout, "{args:?}");
    }
}

#[test]
fn documented_examples() {
    let run = cnct(&["zeta", "--z", "1.01", "--orders", "15", "--scale", "1e-3"]);
    assert_eq!(run.code, 0);
    let row = last_row(&run.stdout);
    assert!(row.starts_with("15 "), "{row}");
    assert!(row.ends_with("0.100~577~943~338~497"), "{row}");

    let run = cnct(&[
        "hyp", "--num", "1,3,7", "--den", "2.5,14", "--z", "1", "--scale", "1e-1",
    ]);
    assert_eq!(run.code, 0);
    assert!(last_row(&run.stdout).ends_with("0.267~108~047~538~428"));

    let run = cnct(&[
        "bessel-sum",
        "--r",
        "0.9999",
        "--y",
        "0.7",
        "--scale",
        "1e-5",
    ]);
    assert_eq!(run.code, 0);
    assert!(last_row(&run.stdout).ends_with("-0.142~847~143~207~135"));

    let run = cnct(&[
        "hyp", "--num", "1,3/2,5", "--den", "9/8,47/8", "--z", "0.99999", "--scale", "1e-4",
    ]);
    assert!(run
        .stdout
        .contains("value             0.238~434~298~763~330"));
}

#[test]
fn table_checks() {
    let run = cnct(&["table", "4.2", "--check"]);
    assert_eq!(run.code, 0);
    assert!(run
        .stdout
        .contains("value             -0.833~333~333~333~333"));
    assert!(run.stdout.ends_with("check             pass\n"));

    let run = cnct(&["table", "5.4", "--check"]);
    assert_eq!(run.code, 0);
    assert!(run
        .stdout
        .contains("value             0.798~585~139~222~548"));

    let run = cnct(&["table", "9.9"]);
    assert_eq!(run.code, 2);
    assert!(run.stdout.is_empty());

    // too few orders to reach the reference
    let run = cnct(&["table", "6.1", "--check", "--max-order", "8"]);
    assert_eq!(run.code, 1);
    assert!(run.stdout.contains("check             FAIL"));
}

#[test]
fn all_tables_in_id_order() {
    let run = cnct(&["table", "--all", "--check"]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    let ids: Vec<&str> = run
        .stdout
        .lines()
        .filter_map(|l| l.split("table=").nth(1))
        .map(|rest| rest.split_whitespace().next().unwrap())
        .collect();
    assert_eq!(ids, TABLE_IDS);
    assert_eq!(run.stdout.matches("check             pass").count(), 11);
    let again = cnct(&["table", "--all", "--check"]);
    assert!(again.stdout == run.stdout);
}

#[test]
fn accelerate_from_file() {
    let terms = (0..20).map(|j| {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        format!("{:e}", sign * 2.0 / ((j + 1) as f64).powi(2))
    });
    let path = term_file(
        "zeta2",
        std::iter::once("# 2 eta(2)".to_string()).chain(terms),
    );
    let run = cnct(&[
        "accelerate",
        "--input",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(run.code, 0, "{}", run.stderr);
    let r = Report::from_json(&run.stdout).unwrap();
    let want = std::f64::consts::PI.powi(2) / 6.0;
    assert!((r.value.re() - want).abs() < 1e-12, "{:?}", r.value);
    assert_eq!(r.rows.len(), r.order_used + 1);

    let grandi = term_file(
        "grandi",
        (0..10).map(|j| if j % 2 == 0 { "1" } else { "-1" }.to_string()),
    );
    let run = cnct(&[
        "accelerate",
        "--input",
        grandi.to_str().unwrap(),
        "--format",
        "json",
    ]);
    let r = Report::from_json(&run.stdout).unwrap();
    assert!((r.value.re() - 0.5).abs() < 1e-15);

    let complex = term_file(
        "complex",
        (0..20).map(|j| format!("{} {}", (-0.5f64).powi(j), (-0.25f64).powi(j))),
    );
    let run = cnct(&[
        "accelerate",
        "--input",
        complex.to_str().unwrap(),
        "--format",
        "json",
    ]);
    let r = Report::from_json(&run.stdout).unwrap();
    assert!(
        (r.value.re() - 2.0 / 3.0).abs() < 1e-12 && (r.value.im() - 0.8).abs() < 1e-12,
        "{:?}",
        r.value
    );

    let empty = term_file("empty", std::iter::empty());
    let run = cnct(&["accelerate", "--input", empty.to_str().unwrap()]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("at least 4 terms"));

    let bad = term_file("bad", ["1", "-0.5", "0.25x", "-0.125"].map(String::from));
    let run = cnct(&["accelerate", "--input", bad.to_str().unwrap()]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("line 3"), "{}", run.stderr);

    let run = cnct(&["accelerate", "--input", "/nonexistent/terms.txt"]);
    assert_eq!(run.code, 2);
}

#[test]
fn exit_codes_and_flags() {
    let run = cnct(&["zeta", "--z", "1"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("pole"), "{}", run.stderr);

    let run = cnct(&["zeta", "--z", "2", "--beta", "-1"]);
    assert_eq!(run.code, 2);

    let run = cnct(&["hyp", "--num", "1,1", "--den", "0", "--z", "0.5"]);
    assert_eq!(run.code, 2);
    assert!(
        run.stderr.contains("denominator parameter"),
        "{}",
        run.stderr
    );

    let run = cnct(&[
        "lerch",
        "--z",
        "0.99999",
        "--s",
        "2",
        "--alpha",
        "10000",
        "--max-order",
        "3",
    ]);
    assert_eq!(run.code, 3);

    let run = cnct(&[
        "zeta",
        "--z",
        "-1",
        "--transform",
        "levin-d",
        "--beta",
        "2",
        "--orders",
        "3",
    ]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("transform         levin-d"));
    assert!(!run.stdout.contains("weniger-delta "));

    let run = cnct(&["zeta", "--z", "2", "--format", "csv", "--orders", "2"]);
    assert_eq!(run.stdout.lines().count(), 4);

    let run = cnct(&["--help"]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.contains("table"));
}
