mod common;

use std::fs;

use common::data;
use nilcohom::cli::{run, Outcome, Report, EXIT_BUDGET, EXIT_INVALID, EXIT_OK};

fn nilcohom(args: &[&str]) -> Outcome {
    let mut full = vec!["nilcohom".to_string()];
    for a in args {
        full.push(if a.ends_with(".json") {
            data(a).display().to_string()
        } else {
            a.to_string()
        });
    }
    run(full)
}

fn ok(args: &[&str]) -> String {
    let out = nilcohom(args);
    assert_eq!(out.code, EXIT_OK, "{args:?}: {}", out.stderr);
    out.stdout
}

#[test]
fn betti_lines() {
    let h3 = ok(&["betti", "h3.json"]);
    assert!(h3.starts_with("betti: 1 2 2 1; class 2\n"));
    assert!(h3.contains("lcs: 3 1 0\n"));
    assert!(h3.contains("euler: 0\n"));
    assert!(ok(&["betti", "abelian3.json"]).starts_with("betti: 1 3 3 1; class 1\n"));
    let iwasawa = ok(&["betti", "complex_heisenberg.json"]);
    assert!(iwasawa.lines().any(|l| l == "b2 = 8"));
}

#[test]
fn betti_warns_on_non_nilpotent() {
    let out = nilcohom(&["betti", "so21.json"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.starts_with("betti: 1 0 0 1; not nilpotent"));
    assert!(out.stderr.contains("warning: algebra is not nilpotent"));
}

#[test]
fn lcs_lines() {
    let out = ok(&["lcs", "complex_heisenberg.json"]);
    assert!(out.starts_with("lcs: 6 2 0\n"));
    assert!(out.ends_with("class 2\n"));
}

#[test]
fn formality_verdicts() {
    assert!(ok(&["formality", "h3.json"]).contains("NOT ONE-FORMAL (image 0 of 2)"));
    let ab = ok(&["formality", "abelian3.json"]);
    assert!(ab.lines().last() == Some("ONE-FORMAL"));
    assert!(ok(&["formality", "complex_heisenberg.json"]).contains("NOT ONE-FORMAL"));
    let out = nilcohom(&["formality", "so21.json"]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stderr.contains("not nilpotent"));
}

#[test]
fn minimal_model_lines() {
    assert_eq!(
        ok(&["minimal-model", "torus2_cup.json"]),
        "stage 1: 2 generators; stabilized\n"
    );
    let three = ok(&["minimal-model", "trivial_cup3.json", "--stages", "2"]);
    assert_eq!(three, "stage 1: 3 generators\nstage 2: 3 generators; not stabilized\n");
    let dual = ok(&["minimal-model", "trivial_cup2.json", "--stages", "2", "--dual"]);
    assert!(dual.contains("dual stage 2 (dim 3):\n  [e0, e1] = -v2_0\n"));
    assert!(dual.ends_with("roundtrip: pass\n"));
}

#[test]
fn gysin_lines() {
    let h = ok(&["gysin", "heisenberg_ext.json"]);
    assert_eq!(h, "H*: 1 2 2 1; surjective: no; nomizu: pass; CT: nonzero\n");
    let p = ok(&["gysin", "product_ext.json", "--hodge"]);
    assert!(p.lines().any(|l| l == "H2: weight 2, dim 5, (1,3,1); PURE"));
    let z = ok(&["gysin", "zero_ext_rank2.json", "--hodge"]);
    let h2 = z.lines().find(|l| l.starts_with("H2:")).unwrap();
    assert!(h2.ends_with("NOT PURE"));
}

#[test]
fn gysin_rejects_bad_hodge_input() {
    let out = nilcohom(&["gysin", "not_11_ext.json", "--hodge"]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stderr.contains("not of type (1,1)"));
    let out = nilcohom(&["gysin", "heisenberg_ext.json", "--hodge"]);
    assert_eq!(out.code, EXIT_INVALID);
    // without --hodge the same file is fine
    assert_eq!(nilcohom(&["gysin", "not_11_ext.json"]).code, EXIT_OK);
}

#[test]
fn invariants_lines() {
    assert!(ok(&["invariants", "h3.json", "trivial_action.json"]).contains("1 2 2 1 / 1 2 2 1"));
    assert!(ok(&["invariants", "h3.json", "sign_action.json"]).contains("1 0 0 1 / 1 2 2 1"));
    let out = nilcohom(&["invariants", "h3.json", "bad_action.json"]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stderr.contains("not an automorphism"));
    // the sign action names h3 as its algebra
    let out = nilcohom(&["invariants", "abelian3.json", "sign_action.json"]);
    assert_eq!(out.code, EXIT_INVALID);
}

#[test]
fn invalid_inputs_exit_one() {
    for args in [
        &["betti", "jacobi_broken.json"][..],
        &["betti", "unordered.json"],
        &["betti", "missing.json"],
        &["bogus"],
        &["minimal-model", "torus2_cup.json", "--stages", "x"],
    ] {
        let out = nilcohom(args);
        assert_eq!(out.code, EXIT_INVALID, "{args:?}");
        assert!(!out.stderr.is_empty());
        assert!(out.stdout.is_empty());
    }
    let out = nilcohom(&["betti", "jacobi_broken.json"]);
    assert!(out.stderr.contains("jacobi violated"));
}

#[test]
fn malformed_json_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    fs::write(
        &path,
        r#"{"dim": 2, "brackets": [{"i": 0, "j": 1, "v": {"1": "1/0"}}]}"#,
    )
    .unwrap();
    let out = run(["nilcohom", "betti", path.to_str().unwrap()]);
    assert_eq!(out.code, EXIT_INVALID);
    assert!(out.stderr.contains("malformed input"));
}

#[test]
fn budget_exits_two() {
    let out = nilcohom(&["--budget", "2", "betti", "h3.json"]);
    assert_eq!(out.code, EXIT_BUDGET);
    assert!(out.stderr.contains("budget exceeded"));

    let out = nilcohom(&["--budget", "3", "minimal-model", "trivial_cup3.json"]);
    assert_eq!(out.code, EXIT_BUDGET);
    assert_eq!(out.stdout, "stage 1: 3 generators; budget exceeded\n");

    let out = nilcohom(&["--json", "--budget", "3", "minimal-model", "trivial_cup3.json"]);
    assert_eq!(out.code, EXIT_BUDGET);
    let report: Report = serde_json::from_str(&out.stdout).unwrap();
    assert!(report.flags["budget_exceeded"]);
    assert_eq!(report.results["stages"].as_array().unwrap().len(), 1);

    assert_eq!(
        nilcohom(&["--budget", "1", "gysin", "heisenberg_ext.json"]).code,
        EXIT_BUDGET
    );
}

#[test]
fn help_exits_zero() {
    let out = nilcohom(&["--help"]);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("minimal-model"));
}

#[test]
fn json_reports_round_trip() {
    let commands: &[&[&str]] = &[
        &["betti", "complex_heisenberg.json"],
        &["betti", "so21.json"],
        &["lcs", "h3.json"],
        &["formality", "h3.json"],
        &["minimal-model", "trivial_cup2.json", "--stages", "4", "--dual"],
        &["gysin", "product_ext.json", "--hodge"],
        &["invariants", "h3.json", "sign_action.json"],
    ];
    for args in commands {
        let mut with_json = vec!["--json"];
        with_json.extend_from_slice(args);
        let first = ok(&with_json);
        let report: Report = serde_json::from_str(&first).unwrap();
        assert_eq!(report.to_json(), first, "{args:?}");
        assert_eq!(ok(&with_json), first, "{args:?} is not deterministic");
    }
}

#[test]
fn json_results_content() {
    let report: Report = serde_json::from_str(&ok(&["--json", "betti", "h3.json"])).unwrap();
    assert_eq!(report.command, "betti");
    assert_eq!(report.results["betti"], serde_json::json!([1, 2, 2, 1]));
    assert_eq!(report.results["class"], 2);

    let report: Report = serde_json::from_str(&ok(&["--json", "gysin", "product_ext.json", "--hodge"])).unwrap();
    assert!(report.flags["pure_h2"]);
    assert_eq!(report.results["mhs"][2][0]["hodge"], serde_json::json!([1, 3, 1]));

    let report: Report =
        serde_json::from_str(&ok(&["--json", "minimal-model", "trivial_cup3.json", "--stages", "2"])).unwrap();
    let stage2 = &report.results["stages"][1];
    assert_eq!(stage2["new_generators"], 3);
    assert_eq!(report.results["status"], "not stabilized");
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_nilcohom");
    let status = |args: &[&str]| {
        let args: Vec<String> = args
            .iter()
            .map(|a| {
                if a.ends_with(".json") {
                    data(a).display().to_string()
                } else {
                    a.to_string()
                }
            })
            .collect();
        std::process::Command::new(bin).args(&args).output().unwrap()
    };
    let out = status(&["betti", "h3.json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("betti: 1 2 2 1; class 2"));
    assert_eq!(status(&["betti", "jacobi_broken.json"]).status.code(), Some(1));
    assert_eq!(status(&["--budget", "2", "betti", "h3.json"]).status.code(), Some(2));
}
