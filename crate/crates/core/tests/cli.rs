use std::path::PathBuf;
use std::process::{Command, Output};

fn model(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("models").join(format!("{name}.fol"))
}

fn folcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_folcoh")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn ddbar_on_s6_fails_with_a_witness() {
    let o = folcoh(&["ddbar", model("s6").to_str().unwrap(), "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let check = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "ddbar-lemma").unwrap();
    assert_eq!(check["verdict"], "fail");
    assert_eq!(check["witness"], "β1^β̄1");
}

#[test]
fn cohomology_csv_lists_every_theory() {
    let o = folcoh(&["cohomology", model("s6").to_str().unwrap(), "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("theory,p,q,dim\n"));
    for line in ["bottChern,1,1,1", "aeppli,1,1,1", "dolbeault,1,1,0", "deRham,2,0,0"] {
        assert!(out.lines().any(|l| l == line), "missing {line} in\n{out}");
    }
}

#[test]
fn sweep_over_the_family() {
    let o = folcoh(&[
        "sweep",
        model("hopf-family").to_str().unwrap(),
        "--grid",
        "0,1/7,1/3,1/2,2/3,1",
        "--reference",
        "0",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["sweep"]["jumps"], serde_json::json!([[0, 1]]));
}

#[test]
fn kaehler_finds_a_form_on_the_torus() {
    let o = folcoh(&["kaehler", model("torus2").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}

#[test]
fn missing_file_is_a_usage_error() {
    let o = folcoh(&["validate", "no/such/model.fol"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("no/such/model.fol"));
    assert!(o.stdout.is_empty());
}

#[test]
fn unknown_subcommand_and_flag() {
    for args in [&["frobnicate", "x.fol"][..], &["validate", "--bogus", "x.fol"][..]] {
        let o = folcoh(args);
        assert_eq!(o.status.code(), Some(2));
        assert!(stderr(&o).contains("Usage"), "{}", stderr(&o));
    }
}

#[test]
fn parametric_model_needs_a_value() {
    let o = folcoh(&["orient", model("hopf-family").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("--at"));
    let o = folcoh(&["orient", model("hopf-family").to_str().unwrap(), "--at", "s=1/2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
}
