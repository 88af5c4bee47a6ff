use modular_golay::construction::reference_matrix;
use modular_golay::verify::KNOWN_FAILURES;
use serde_json::Value;
use std::io::Write;
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_modular-golay"));
    cmd.env_remove("MODULAR_GOLAY_OUT_DIR");
    cmd
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8 output")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn verify_reports_only_the_dimension_failures() {
    let out = run(&["verify", "--json"]);
    assert_eq!(code(&out), 1);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["passed"], false);
    let failed: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, KNOWN_FAILURES);
}

#[test]
fn verify_flags_the_uncorrected_sigma() {
    let out = run(&["verify", "--printed-sigma"]);
    assert_eq!(code(&out), 1);
    let text = stdout(&out);
    assert!(text.contains("[FAIL] generator matrix matches reference"));
    assert!(text.contains("[FAIL] sigma is a bijection"));
}

#[test]
fn derive_json_bundle() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "derive",
        "--format",
        "json",
        "--output",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let bundle: Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("golay-derivation.json")).unwrap(),
    )
    .unwrap();
    let rows: Vec<String> = bundle["matrix"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r.as_str().unwrap().to_string() + "\n")
        .collect();
    assert_eq!(rows.concat(), reference_matrix().to_text());
    for key in ["quadrilateral", "hexagon", "tables", "subsets"] {
        assert!(!bundle[key].is_null(), "missing {key}");
    }
}

#[test]
fn derive_text_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(&[
        "derive",
        "--format",
        "text",
        "--output",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let matrix = std::fs::read_to_string(dir.path().join("matrix.txt")).unwrap();
    let lines: Vec<&str> = matrix.lines().collect();
    assert_eq!(lines.len(), 12);
    assert!(lines
        .iter()
        .all(|l| l.len() == 24 && l.bytes().all(|b| b == b'0' || b == b'1')));
    for name in ["labelings.txt", "tables.txt", "subsets.txt"] {
        assert!(dir.path().join(name).exists());
    }
}

#[test]
fn derive_uses_env_output_dir() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("from-env");
    let out = bin()
        .args(["derive", "--format", "csv"])
        .env("MODULAR_GOLAY_OUT_DIR", &target)
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    assert!(target.join("matrix.csv").exists());
}

#[test]
fn derive_to_unwritable_path_is_an_io_error() {
    // A regular file cannot hold a directory, even for root.
    let file = tempfile::NamedTempFile::new().unwrap();
    let bad = file.path().join("out");
    let out = run(&["derive", "--output", bad.to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    assert!(!out.stderr.is_empty());
}

#[test]
fn matrix_command() {
    let out = run(&["matrix"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), reference_matrix().to_text());
    let json: Value = serde_json::from_str(&stdout(&run(&["matrix", "--json"]))).unwrap();
    assert_eq!(json.as_array().unwrap().len(), 12);
}

#[test]
fn weights_command() {
    let out = run(&["weights", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out),
        "weight,count\n0,1\n8,87\n12,336\n16,87\n24,1\n"
    );
}

#[test]
fn encode_zero() {
    let out = run(&["encode", "000"]);
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "000000\n");
}

#[test]
fn encode_reads_stdin() {
    let mut child = bin()
        .arg("encode")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"000\n\n1FF\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0);
    assert_eq!(stdout(&out), "000000\nFFFFFF\n");
}

#[test]
fn malformed_input_is_a_usage_error() {
    for args in [
        &["encode", "0000"][..],
        &["encode", "xyz"],
        &["encode", "200"],
        &["decode", "12345"],
    ] {
        let out = run(args);
        assert_eq!(code(&out), 2, "{args:?}");
    }
    assert_eq!(code(&run(&["frobnicate"])), 2);
    assert_eq!(code(&run(&["verify", "--format", "yaml"])), 2);
}

#[test]
fn decode_corrects_three_errors() {
    let encoded = stdout(&run(&["encode", "15A"]));
    let c = u32::from_str_radix(encoded.trim(), 16).unwrap();
    let received = format!("{:06X}", c ^ (1 << 23) ^ (1 << 10) ^ 1);
    let out = run(&["decode", "--json", &received]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v[0]["status"], "corrected");
    assert_eq!(v[0]["info"], "15A");
    assert_eq!(v[0]["codeword"], encoded.trim());
    assert_eq!(v[0]["errors"], serde_json::json!([1, 14, 24]));
}

#[test]
fn decode_weight_four_is_detected() {
    let out = run(&["decode", "F00000"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).starts_with("detected-uncorrectable"));
}

#[test]
fn report_dumps_syndrome_table() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.bin");
    let out = run(&[
        "report",
        "--json",
        "--syndrome-table",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rank"], 9);
    assert_eq!(v["min_distance"], 8);
    assert_eq!(v["golay"], false);
    let bytes = std::fs::read(&path).unwrap();
    assert_eq!(bytes.len(), 4 << (24 - 9));
    assert_eq!(&bytes[..4], &[0, 0, 0, 0]);
}

#[test]
fn outputs_are_deterministic() {
    for args in [
        &["verify", "--json"][..],
        &["matrix", "--format", "csv"],
        &["report"],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for d in [&a, &b] {
        run(&["derive", "--json", "--output", d.path().to_str().unwrap()]);
    }
    let read =
        |d: &tempfile::TempDir| std::fs::read(d.path().join("golay-derivation.json")).unwrap();
    assert_eq!(read(&a), read(&b));
}
