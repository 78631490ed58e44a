mod common;

use std::process::Command;

use common::{check_golden, run_case, CASES};
use ggm_core::assembly::GgmDescription;

fn ggm(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_ggm")).args(args).output().unwrap()
}

#[test]
fn golden_files() {
    let failures: Vec<String> = CASES.iter().filter_map(|c| check_golden(c, &run_case(c)).err()).collect();
    assert!(failures.is_empty(), "{failures:#?}");
}

#[test]
fn reports_are_byte_identical_across_runs() {
    for case in CASES {
        assert_eq!(run_case(case), run_case(case), "{}", case.name);
    }
}

#[test]
fn exit_codes() {
    assert_eq!(ggm(&["equiv", "--lens", "7,2", "--lens", "7,3"]).status.code(), Some(0));
    let fx = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures");
    let invalid = ggm(&["classify", &format!("{fx}/invalid.json")]);
    assert_eq!(invalid.status.code(), Some(1));
    let line = String::from_utf8(invalid.stderr).unwrap();
    let v: serde_json::Value = serde_json::from_str(line.trim()).unwrap();
    assert_eq!(v["kind"], "invalid_description");
    assert_eq!(ggm(&["classify", "/no/such/file.json"]).status.code(), Some(2));
    assert_eq!(ggm(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(ggm(&["--tol-flatness", "-1", "gen"]).status.code(), Some(2));
}

#[test]
fn hemisphere_profile_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("hemi.csv");
    let n = 512;
    let mut text = String::from("rho,h\n");
    for i in 0..=n {
        let rho = 0.25 * i as f64 / n as f64;
        let h = (2.0 * std::f64::consts::PI * rho).sin() / (2.0 * std::f64::consts::PI);
        text.push_str(&format!("{rho:.17e},{h:.17e}\n"));
    }
    std::fs::write(&path, text).unwrap();
    let o = ggm(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["checks"]["flat_boundary"], false);
    assert_eq!(report["checks"]["nonnegative_curvature"], true);
}

#[test]
fn emitted_descriptions_round_trip() {
    let o = ggm(&["gen", "--seed", "3", "--count", "20"]);
    assert!(o.status.success());
    let list: Vec<GgmDescription> = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(list.len(), 20);
    for g in &list {
        let text = serde_json::to_string(g).unwrap();
        assert_eq!(&serde_json::from_str::<GgmDescription>(&text).unwrap(), g);
    }
    let fx = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/one_sided.json");
    let cover: serde_json::Value = serde_json::from_slice(&ggm(&["cover", fx]).stdout).unwrap();
    let d: GgmDescription = serde_json::from_value(cover["description"].clone()).unwrap();
    assert_eq!(serde_json::to_value(&d).unwrap(), cover["description"]);
}

#[test]
fn gen_depends_on_seed() {
    assert_eq!(ggm(&["gen", "--seed", "5"]).stdout, ggm(&["gen", "--seed", "5"]).stdout);
    assert_ne!(ggm(&["gen", "--seed", "5"]).stdout, ggm(&["gen", "--seed", "6"]).stdout);
}
