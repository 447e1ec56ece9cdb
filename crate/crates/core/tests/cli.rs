mod common;

use std::process::Command;

use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_hypersing");

fn exec(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn golden(name: &str) -> String {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{path}: {e}"))
}

const GOLDEN: &[(&[&str], &str)] = &[
    (&["dbound", "3", "4"], "dbound_3_4.txt"),
    (&["dbound", "3", "4", "--json"], "dbound_3_4.json"),
    (&["sharpness", "2", "5", "--t", "1"], "sharpness_2_5_t1.txt"),
    (&["sharpness", "2", "5", "--t", "1", "--json"], "sharpness_2_5_t1.json"),
    (&["certify", "x^3+y^3", "--k", "3", "--criterion", "fdt"], "certify_cubic_k3_fdt.txt"),
    (&["certify", "x^3+y^3", "--k", "3", "--criterion", "fdt", "--json"], "certify_cubic_k3_fdt.json"),
];

#[test]
fn golden_files_match_exactly() {
    for (args, file) in GOLDEN {
        let (code, stdout, stderr) = exec(args);
        assert_eq!(code, 0, "{args:?}: {stderr}");
        assert_eq!(stdout, golden(file), "{args:?} differs from {file}");
    }
}

#[test]
fn golden_json_validates() {
    for (_, file) in GOLDEN.iter().filter(|(_, f)| f.ends_with(".json")) {
        let v: Value = serde_json::from_str(&golden(file)).unwrap();
        common::validate_output(&v).unwrap_or_else(|e| panic!("{file}: {e}"));
    }
}

#[test]
fn every_subcommand_emits_schema_valid_json() {
    let cases: &[&[&str]] = &[
        &["analyze", "x^3+y^3", "--json"],
        &["analyze", "x^3+y^3", "--nvars", "3", "--json"],
        &["analyze", "x^5+y^5+x^3*y^3", "--k", "6", "--json"],
        &["analyze", "x^3+y^4+z^2", "--json"],
        &["analyze", "x^3+y^2", "--weights", "2,3", "--wdegree", "6", "--json"],
        &["analyze", "a^3 + a*b^3", "--vars", "a,b", "--json"],
        &["hilbert", "x^3+x*y^3", "--json"],
        &["hilbert", "x^5+y^5+x^3*y^3", "--json"],
        &["certify", "x^5+y^5", "--k", "5", "--criterion", "corollary", "--json"],
        &["sharpness", "3", "4", "--t", "-1", "--json"],
        &["verify-lemma", "--max-n", "5", "--max-m", "5", "--json"],
        &["member", "x^2*y", "--jacobian-of", "x^3+y^3", "--json"],
        &["member", "x^3+y^3", "--jacobian-of", "x^3+y^3", "--json"],
        &["dbound", "2", "3", "--json"],
    ];
    for args in cases {
        let (code, stdout, stderr) = exec(args);
        assert_eq!(code, 0, "{args:?}: {stderr}");
        let v: Value = serde_json::from_str(&stdout).unwrap();
        common::validate_output(&v).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    }
}

#[test]
fn validator_rejects_broken_documents() {
    let mut v: Value = serde_json::from_str(&golden("dbound_3_4.json")).unwrap();
    v["case"] = Value::from("n(m-2), otherwise");
    assert!(common::validate_output(&v).is_err());
    let mut v: Value = serde_json::from_str(&golden("certify_cubic_k3_fdt.json")).unwrap();
    v["verdict"]["sufficiency_only"] = Value::from(false);
    assert!(common::validate_output(&v).is_err());
    v["verdict"].as_object_mut().unwrap().remove("sufficiency_only");
    assert!(common::validate_output(&v).is_err());
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["analyze", "x^4+y^4+z^4+1/2*x^2*y^2*z^2", "--json"][..],
        &["sharpness", "2", "6", "--t", "1/2"][..],
        &["verify-lemma", "--max-n", "4", "--max-m", "6"][..],
    ] {
        let first = exec(args);
        for _ in 0..2 {
            assert_eq!(exec(args), first, "{args:?}");
        }
    }
}

#[test]
fn exit_codes() {
    let (code, _, stderr) = exec(&["analyze", "x^3 + 2.5*y"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("position 7"), "{stderr}");
    assert_eq!(exec(&["analyze", "x^3 + q"]).0, 2);
    assert_eq!(exec(&["analyze", "x^3/0"]).0, 2);
    assert_eq!(exec(&["frobnicate"]).0, 2);
    assert_eq!(exec(&["analyze", "x^2+y^2", "--weights", "0,1", "--wdegree", "2"]).0, 2);
    assert_eq!(exec(&["sharpness", "2", "4"]).0, 3);
    assert_eq!(exec(&["certify", "x^4+y^4", "--k", "3", "--criterion", "corollary"]).0, 3);
    assert_eq!(exec(&["hilbert", "x^3+y^2", "--weights", "1,1", "--wdegree", "3"]).0, 3);
    assert_eq!(exec(&["member", "x", "--jacobian-of", "x*y^2"]).0, 4);
}

#[test]
fn inadmissible_message_names_hypotheses() {
    let (_, _, stderr) = exec(&["sharpness", "3", "3"]);
    assert!(stderr.contains("n >= 4 required when m = 3"), "{stderr}");
    let (_, _, stderr) = exec(&["sharpness", "2", "4"]);
    assert!(stderr.contains("nm-2n-m = 0"), "{stderr}");
}

#[test]
fn analyze_reports_cylinder_as_not_regular() {
    let (code, stdout, _) = exec(&["analyze", "x^3+y^3", "--nvars", "3"]);
    assert_eq!(code, 0);
    assert!(stdout.contains("regular: no"), "{stdout}");
}

#[test]
fn round_trip_through_json() {
    let (_, stdout, _) = exec(&["analyze", "x^3 + x*y^3", "--json"]);
    let report: hypersing::frontend::AnalysisReport = serde_json::from_str(&stdout).unwrap();
    let again = serde_json::to_string_pretty(&report).unwrap() + "\n";
    assert_eq!(again, stdout);
    assert_eq!(report.weights.unwrap().weights, vec![3, 2]);
}
