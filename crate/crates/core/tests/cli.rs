use std::process::Command;

use k3curves::cli::{run, EXIT_NOT_EXISTS, EXIT_OK, EXIT_USAGE};
use k3curves::record::OutputRecord;

fn invoke(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let mut full = vec!["k3curves"];
    full.extend_from_slice(args);
    let code = run(full, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn json(args: &[&str]) -> (i32, OutputRecord) {
    let (code, out, _) = invoke(args);
    (code, serde_json::from_str(out.trim()).unwrap())
}

#[test]
fn classify_exit_codes() {
    let (code, out, _) = invoke(&["classify", "--n", "2", "--d", "5", "--g", "3"]);
    assert_eq!(code, EXIT_NOT_EXISTS);
    assert!(out.contains("exists          false"));
    assert!(out.contains("case            IV"));

    let (code, rec) = json(&["classify", "--n", "5", "--d", "3", "--g", "1", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    assert!(rec.exists);
    assert_eq!(rec.quadrics, k3curves::Quadrics::QuadricsAndCubics);

    let (code, rec) = json(&["classify", "--n", "5", "--d", "5", "--g", "2", "--birational", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    assert!(rec.exists && rec.birational_only);
}

#[test]
fn usage_and_domain_errors() {
    let (code, out, err) = invoke(&["classify", "--n", "2", "--d", "5"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.is_empty());
    assert!(err.contains("--g"));

    let (code, _, err) = invoke(&["classify", "--n", "1", "--d", "5", "--g", "0"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("n must be at least 2"));

    let (code, _, _) = invoke(&["classify", "--n", "2", "--d", "-3", "--g", "0"]);
    assert_eq!(code, EXIT_USAGE);

    let (code, _, err) = invoke(&["ci", "--family", "cubic", "--d-max", "3", "--g-max", "3"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("unknown family"));

    let (code, _, _) = invoke(&["nonspecial", "--n", "2", "--d", "6", "--g", "4", "--k", "0"]);
    assert_eq!(code, EXIT_USAGE);

    let (code, _, _) = invoke(&["frobnicate"]);
    assert_eq!(code, EXIT_USAGE);
}

#[test]
fn table_shape() {
    let (code, out, _) = invoke(&["table", "--n", "2", "--d-max", "8", "--g-max", "9"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "n,d,g,lambda,case,exists,exceptions,quadrics,picard_rank,birational_only");
    assert_eq!(lines.len(), 1 + 8 * 10);
    assert_eq!(lines[1], "2,1,0,9,IV,true,,NotApplicable,2,false");
    assert_eq!(*lines.last().unwrap(), "2,8,9,0,I,true,,NotApplicable,1,false");
}

#[test]
fn table_only_exists_and_empty_box() {
    let (_, out, _) = invoke(&["table", "--n", "3", "--d-max", "3", "--g-max", "1", "--only-exists"]);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    let keys: Vec<String> = rows.iter().map(|r| r.split(',').take(3).collect::<Vec<_>>().join(",")).collect();
    assert_eq!(keys, ["3,1,0", "3,2,0", "3,3,0", "3,3,1"]);
    assert!(rows[3].starts_with("3,3,1,9,II,true,"));

    let (code, out, _) = invoke(&["table", "--n", "3", "--d-max", "0", "--g-max", "10"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "n,d,g,lambda,case,exists,exceptions,quadrics,picard_rank,birational_only\n");
}

#[test]
fn table_quotes_exception_lists() {
    let (_, out, _) = invoke(&["table", "--n", "3", "--d-max", "7", "--g-max", "5"]);
    assert!(out.lines().any(|l| l == "3,7,5,1,II,false,\"a,d\",NotApplicable,2,false"), "{out}");
}

#[test]
fn table_box_guard() {
    let (code, _, err) = invoke(&["table", "--n", "2", "--d-max", "100000", "--g-max", "1000"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("--force"));
}

#[test]
fn json_lines_round_trip() {
    let (code, out, _) = invoke(&[
        "table",
        "--n",
        "6",
        "--d-max",
        "12",
        "--g-max",
        "20",
        "--format",
        "json-lines",
        "--mode",
        "birational",
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 12 * 21);
    for line in out.lines() {
        let rec: OutputRecord = serde_json::from_str(line).unwrap();
        assert_eq!(rec.to_json(), line);
    }
}

#[test]
fn ci_table() {
    let (code, out, _) = invoke(&["ci", "--family", "quartic", "--d-max", "10", "--g-max", "15"]);
    assert_eq!(code, EXIT_OK);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].ends_with(",birational_only,hypersurface_degree"));
    assert!(lines.contains(&"2,5,3,9,IV,false,2n+1,NotApplicable,2,false,"));
    for d in [4, 8] {
        let g = d * d / 8 + 1;
        let prefix = format!("2,{d},{g},0,I,true,");
        let row = lines.iter().find(|l| l.starts_with(&prefix)).unwrap();
        assert!(row.ends_with(&format!(",{}", d / 4)), "{row}");
    }

    // (4, 3, 1) exists in general but not on a (2, 2, 2) complete intersection.
    let (_, out, _) = invoke(&["ci", "--family", "222", "--d-max", "3", "--g-max", "1", "--format", "json-lines"]);
    let rec: OutputRecord = serde_json::from_str(out.lines().last().unwrap()).unwrap();
    assert_eq!((rec.d, rec.g, rec.exists), (3, 1, false));
    assert_eq!(rec.quadrics, k3curves::Quadrics::QuadricsAndCubics);
}

#[test]
fn nonspecial_output() {
    let (code, out, _) = invoke(&["nonspecial", "--n", "2", "--d", "6", "--g", "4", "--k", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "nonspecial      false\nd <= 2nk        6 <= 4: false\ndk > nk^2 + g   6 > 6: false\n");
    let (_, out, _) = invoke(&["nonspecial", "--n", "2", "--d", "6", "--g", "4", "--k", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["nonspecial"], true);
    assert_eq!(v["two_nk"], 8);
}

#[test]
fn selftest_small_box() {
    let (code, out, _) = invoke(&["selftest", "--n-max", "5", "--d-max", "12"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.ends_with("mismatches 0\n"));
    let (code, out, _) = invoke(&["selftest", "--n-max", "4", "--d-max", "8", "--format", "json"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert_eq!(v[0]["mismatches"].as_array().unwrap().len(), 0);
}

#[test]
fn binary_exit_codes_and_streams() {
    let exe = env!("CARGO_BIN_EXE_k3curves");
    let o = Command::new(exe).args(["classify", "--n", "2", "--d", "5", "--g", "3"]).output().unwrap();
    assert_eq!(o.status.code(), Some(EXIT_NOT_EXISTS));
    assert!(o.stderr.is_empty());

    let o = Command::new(exe).args(["classify", "--n", "4", "--d", "4", "--g", "1"]).output().unwrap();
    assert_eq!(o.status.code(), Some(EXIT_OK));

    let o = Command::new(exe).args(["table", "--n", "0", "--d-max", "3", "--g-max", "3"]).output().unwrap();
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
    assert!(o.stdout.is_empty());
    assert!(!o.stderr.is_empty());
}
