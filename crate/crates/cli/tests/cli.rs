use std::path::Path;
use std::process::{Command, Output};

use catcross_cli::format::{AlphaEntry, ElementRef, SystemDescription};
use catcross_cli::gallery;
use serde_json::Value;

fn catcross(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catcross"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = catcross(&full);
    let v = serde_json::from_slice(&out.stdout).expect("json report");
    (out.status.code().unwrap(), v)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn validate_reports_properties_of_bundled_systems() {
    let (code, v) = json(&["validate", "m2_z2_pairgroupoid"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["valid"], true);
    let (code, v) = json(&["validate", "z4_c2_twisted3"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["twisted"], true);
    assert_eq!(v["result"]["strongly_graded"], true);
}

#[test]
fn mutated_swap_fixture_is_rejected_with_a_cocycle_witness() {
    let dir = tempfile::tempdir().unwrap();
    let mut d = gallery::get("swap_skew").unwrap();
    d.alpha.push(AlphaEntry("s".into(), "s".into(), ElementRef::Name("(1,0)".into())));
    let file = write(dir.path(), "bad.json", &d.to_json());
    let (code, v) = json(&["validate", &file]);
    assert_eq!(code, 2);
    let w = &v["result"]["violations"][0];
    assert_eq!(w["axiom"], "cocycle");
    assert_eq!(w["tuple"], serde_json::json!({"s": "s", "t": "s", "r": "s"}));
    assert_ne!(w["left"], w["right"]);
    // analyses refuse invalid input with the same status
    let (code, _) = json(&["analyze", &file, "--what", "center"]);
    assert_eq!(code, 2);
}

#[test]
fn parse_failures_carry_positions() {
    let dir = tempfile::tempdir().unwrap();
    let file = write(dir.path(), "broken.json", "{\n  \"version\": 1,\n  \"rings\": \n}");
    let out = catcross(&["validate", &file]);
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("line 4, column 1"), "{text}");

    let mut d = gallery::get("z4_c2_twisted3").unwrap();
    d.alpha[0].0 = "t".into();
    let file = write(dir.path(), "unknown.json", &d.to_json());
    let (code, v) = json(&["validate", &file]);
    assert_eq!(code, 1);
    assert!(v["result"]["error"].as_str().unwrap().contains("alpha"));

    let (code, _) = json(&["validate", "no_such_system"]);
    assert_eq!(code, 1);
}

#[test]
fn analyses_match_the_documented_examples() {
    let (code, v) = json(&["analyze", "m2_z3_pairgroupoid", "--what", "center"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["size"], 3);
    assert_eq!(v["result"]["oracle"], "agrees");
    assert_eq!(
        v["result"]["elements"],
        serde_json::json!(["0", "u_(1,1) + u_(2,2)", "2 u_(1,1) + 2 u_(2,2)"])
    );

    let (_, v) = json(&["analyze", "swap_skew", "--what", "commutant"]);
    assert_eq!(v["result"]["equals_A"], true);
    let (_, v) = json(&["analyze", "swap_skew", "--what", "maxcomm"]);
    assert_eq!(v["result"]["maximal_commutative"], true);

    let (code, v) = json(&["analyze", "z2_c2_groupalgebra", "--what", "commutative"]);
    assert_eq!(code, 0);
    let conds = v["result"]["conditions"].as_object().unwrap();
    assert!(conds.values().all(|c| c == true));
}

#[test]
fn oversized_center_downgrades_to_conditions_only() {
    let (code, v) = json(&["--cap", "100", "analyze", "m3_z2_pairgroupoid", "--what", "center"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["oracle"], "skipped");
    assert!(v["warnings"][0].as_str().unwrap().contains("conditions-only"));
    assert_eq!(v["result"]["size"], 2);

    let (code, _) = json(&["--cap", "3", "analyze", "m3_z4_pairgroupoid", "--what", "center"]);
    assert_eq!(code, 4);
}

#[test]
fn ideal_subcommands_report_verdicts_and_rejections() {
    let (code, v) = json(&["ideals", "m2_z2_pairgroupoid", "--sub", "theorem", "--exhaustive"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["checked"], 15);
    assert_eq!(v["result"]["passed"], 15);

    let (code, v) = json(&["ideals", "z2_c2_groupalgebra", "--sub", "converse"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["outcome"], "witness");
    assert_eq!(v["result"]["ideal"]["ideal_size"], 2);

    let (code, v) = json(&["ideals", "gf4_c2_frobenius", "--sub", "converse"]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["outcome"], "maximal");

    let (code, v) = json(&["ideals", "swap_skew", "--sub", "converse"]);
    assert_eq!(code, 3);
    let failed: Vec<&Value> = v["hypotheses"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|h| h["holds"] == false)
        .collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["name"], "A_e an integral domain");

    let (code, _) = json(&["ideals", "swap_skew", "--sub", "normal"]);
    assert_eq!(code, 3);
}

#[test]
fn sampling_records_its_seed() {
    let (code, v) = json(&[
        "ideals", "z3_c3_groupalgebra", "--sub", "theorem", "--sample", "10", "--seed", "9",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["seed"], 9);
    assert_eq!(v["result"]["checked"], 10);
}

#[test]
fn demos_write_round_trippable_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("m.json");
    let (code, v) = json(&["demo", "matrix", "--n", "2", "--ring", "z2", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["round_trip"], true);
    assert_eq!(
        v["result"]["analysis"]["center"]["elements"],
        serde_json::json!(["0", "u_(1,1) + u_(2,2)"])
    );
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(SystemDescription::parse(&text).unwrap(), gallery::matrix(2, "z2").unwrap());

    let out = dir.path().join("g.json");
    let (code, v) = json(&["demo", "groupalgebra", "--group", "c2", "--ring", "z2", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["analysis"]["maxcomm"]["maximal_commutative"], false);

    let out = dir.path().join("s.json");
    let (code, v) = json(&["demo", "skew-swap", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["analysis"]["center"]["size"], 2);

    let (code, _) = json(&["demo", "nonsense"]);
    assert_eq!(code, 1);
}

#[test]
fn every_bundled_system_validates_from_the_command_line() {
    let (code, v) = json(&["list"]);
    assert_eq!(code, 0);
    let systems = v["result"]["systems"].as_array().unwrap();
    assert_eq!(systems.len(), gallery::NAMES.len());
    for s in systems {
        let name = s["name"].as_str().unwrap();
        let (code, _) = json(&["validate", name]);
        assert_eq!(code, 0, "{name}");
    }
}

#[test]
fn worker_count_does_not_change_output() {
    for args in [
        vec!["ideals", "z3_c3_groupalgebra", "--sub", "theorem"],
        vec!["ideals", "swap_skew", "--sub", "equivalence", "--sample", "20", "--seed", "3"],
    ] {
        let mut one = vec!["--workers", "1"];
        one.extend(&args);
        let mut eight = vec!["--workers", "8"];
        eight.extend(&args);
        assert_eq!(catcross(&one).stdout, catcross(&eight).stdout);
    }
}
