use std::process::{Command, Output};

fn nilblock(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nilblock"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn catalog_list_has_every_entry() {
    let o = nilblock(&["catalog", "list"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 21);
    assert!(text.contains("remark14\t34992\t3\t"));
}

#[test]
fn analyze_a5_reports_m() {
    let o = nilblock(&["analyze", "a5", "--prime", "2"]);
    assert!(o.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let target = &report["targets"][0];
    assert_eq!(target["status"], "ok");
    let v = &target["report"]["verdicts"][0];
    assert_eq!(v["m"], 44);
    assert_eq!(v["cond_iv"], false);
    assert_eq!(v["focal_method"], "fusion-enumeration");
    assert!(v["condition_ii"].as_str().unwrap().contains("excluded"));
    assert!(report["version"].is_string());
    assert!(target["report"]["header"]["reduction_map"]
        .as_str()
        .unwrap()
        .starts_with("p=2"));
    assert!(target["report"].get("timing_us").is_none());
}

#[test]
fn reports_are_reproducible_and_written_to_files() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.tsv");
    let b = dir.path().join("b.tsv");
    for path in [&a, &b] {
        let o = nilblock(&[
            "analyze",
            "s4",
            "--format",
            "tsv",
            "--report",
            path.to_str().unwrap(),
        ]);
        assert!(o.status.success());
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    // S4 at 2 has one block, at 3 three blocks.
    assert_eq!(text.lines().filter(|l| l.starts_with("s4\t")).count(), 4);
}

#[test]
fn group_files_are_accepted() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d8.toml");
    std::fs::write(
        &path,
        "name = \"mydihedral\"\ndegree = 4\ngenerators = [\"(1,2,3,4)\", \"(1,3)\"]\ncomment = \"order 8\"\n",
    )
    .unwrap();
    let o = nilblock(&["analyze", path.to_str().unwrap(), "--format", "tsv"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("mydihedral\t2\t0\ttrue\t3\t4\t2\t1\t4\t4\t4\ttrue\ttrue\ttrue\ttrue"));
}

#[test]
fn bad_input_fails_cleanly() {
    let o = nilblock(&["analyze", "nosuch"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown"));
    let o = nilblock(&["analyze", "s3", "--prime", "4", "--strict"]);
    assert_eq!(o.status.code(), Some(2));
    // Without --strict the failure is recorded in the report.
    let o = nilblock(&["analyze", "s3", "--prime", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("\"status\": \"error\""));
}

#[test]
fn fusion_cap_switches_to_oracles() {
    let o = nilblock(&["analyze", "s4", "--prime", "2", "--fusion-cap", "2"]);
    assert!(o.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let v = &report["targets"][0]["report"]["verdicts"][0];
    assert_eq!(v["focal_method"], "sylow-derived-oracle");
    assert_eq!(v["consistent"], true);
}

#[test]
fn timing_is_opt_in() {
    let o = nilblock(&["analyze", "c6", "--timing"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report["targets"][0]["report"]["timing_us"]["character_table"].is_u64());
}

#[test]
fn verify_paper_passes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("suite.json");
    let o = nilblock(&["verify-paper", "--report", path.to_str().unwrap()]);
    let text = stdout(&o);
    assert!(o.status.success(), "{text}");
    assert!(text.contains("sum 1548"));
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 10);
    let suite: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(suite["remark14"]["sylow_abelianization_index"], 27);
}
