use std::path::PathBuf;
use std::process::{Command, Output};

use monochar::analysis::{Stage, StageError};
use monochar_cli::CliError;
use serde_json::Value;

struct Inputs {
    dir: tempfile::TempDir,
}

impl Inputs {
    fn new() -> Inputs {
        Inputs {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str, text: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        path
    }
}

const T3: &str = "# full transformation monoid on 3 points\n2 1 3\n2 3 1\n1 1 3\n";
const S3: &str = "2 1 3\n2 3 1\n";

fn monochar(args: &[&str], input: &PathBuf) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monochar"))
        .args(args)
        .arg("--input")
        .arg(input)
        .output()
        .unwrap()
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn enumerate_t3() {
    let inputs = Inputs::new();
    let v = stdout_json(&monochar(&["enumerate", "--format", "json"], &inputs.file("t3.gens", T3)));
    assert_eq!(v["order"], 27);
    assert_eq!(v["idempotents"], 10);
    assert_eq!(v["word_lengths"].as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).sum::<u64>(), 27);
}

#[test]
fn cartan_of_s3() {
    let inputs = Inputs::new();
    let v = stdout_json(&monochar(&["cartan", "--format", "json"], &inputs.file("s3.gens", S3)));
    assert_eq!(v["cartan"], serde_json::json!([[1, 0, 0], [0, 1, 0], [0, 0, 1]]));
    assert_eq!(v["table"], serde_json::json!([["1", "1", "1"], ["1", "-1", "1"], ["2", "0", "-1"]]));
    assert_eq!(v["dims"], serde_json::json!([1, 1, 2]));
    assert_eq!(v["c_m"][0], serde_json::json!([1, 2, 3]));
    for key in ["irreducibles", "c_m", "table", "cartan", "dims"] {
        assert!(v.get(key).is_some(), "{key}");
    }
}

#[test]
fn membership() {
    let inputs = Inputs::new();
    let s3 = inputs.file("s3.gens", S3);
    let out = monochar(&["membership", "--element", "1 1 3"], &s3);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "false\n");
    let out = monochar(&["membership", "--element", "[3,1,2]"], &s3);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "true\n");
}

#[test]
fn parse_errors_exit_1_with_line() {
    let inputs = Inputs::new();
    let out = monochar(&["enumerate"], &inputs.file("bad.gens", "1 2 3\n\n1 x 3\n"));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 3"));
    let out = monochar(&["enumerate"], &inputs.file("mixed.gens", "1 2 3\n1 2\n"));
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
    let out = monochar(&["enumerate"], &inputs.dir.path().join("missing.gens"));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn format_must_suit_the_command() {
    let inputs = Inputs::new();
    let t3 = inputs.file("t3.gens", T3);
    assert_eq!(monochar(&["cartan", "--format", "dot"], &t3).status.code(), Some(1));
    assert_eq!(monochar(&["green", "--format", "csv"], &t3).status.code(), Some(1));
    let dot = monochar(&["green", "--format", "dot"], &t3);
    let text = String::from_utf8(dot.stdout).unwrap();
    assert!(text.starts_with("digraph eggbox"));
    assert!(text.contains("cluster_j2"));
}

#[test]
fn bichar_csv() {
    let inputs = Inputs::new();
    let out = monochar(&["bichar", "--format", "csv"], &inputs.file("t3.gens", T3));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some(",1 2 3,1 3 2,2 3 1,1 1 3,2 1 1,1 1 1"));
    // B(id, id) = |M|
    assert!(lines.next().unwrap().starts_with("1 2 3,27,"));
}

#[test]
fn radical_dimensions() {
    let inputs = Inputs::new();
    let t3 = inputs.file("t3.gens", T3);
    let v = stdout_json(&monochar(&["radical", "--format", "json"], &t3));
    assert_eq!(v["trace_form_radical"], 7);
    let dims: Vec<u64> = v["l_classes"].as_array().unwrap().iter().map(|l| l["radical_dim"].as_u64().unwrap()).collect();
    assert_eq!(dims, [0, 1, 1, 1, 0, 0, 0]);
    let v = stdout_json(&monochar(&["radical", "--format", "json", "--oracle-max", "10"], &t3));
    assert!(v["trace_form_radical"].is_null());
}

#[test]
fn schutz_and_chartable_text() {
    let inputs = Inputs::new();
    let t3 = inputs.file("t3.gens", T3);
    let out = String::from_utf8(monochar(&["schutz"], &t3).stdout).unwrap();
    assert!(out.contains("J0 rank 3: group order 6, 3 classes"));
    let out = String::from_utf8(monochar(&["chartable", "--format", "json"], &t3).stdout).unwrap();
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["dims"], serde_json::json!([1, 1, 2, 3, 2, 1]));
    assert!(v.get("cartan").is_none());
}

#[test]
fn bench_reports_every_stage() {
    let inputs = Inputs::new();
    let out = monochar(&["bench", "--repeat", "2"], &inputs.file("t3.gens", T3));
    let text = String::from_utf8(out.stdout).unwrap();
    for stage in Stage::ALL {
        assert!(text.contains(stage.name()), "{stage}");
    }
}

#[test]
fn contract_violations_exit_2() {
    let e: CliError = StageError {
        stage: Stage::Cartan,
        source: monochar::Error::NegativeEntry { row: 0, col: 1, value: -1 },
    }
    .into();
    assert_eq!(e.exit_code(), 2);
    assert!(e.to_string().contains("cartan"));
}
