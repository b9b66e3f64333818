use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use proptest::prelude::*;
use symdyn_cli::config::{CollectionConfig, PotentialConfig, ShiftConfig};
use symdyn_cli::{parse_config, AnalysisConfig, ExperimentConfig};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_symdyn"))
}

fn configs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../configs")
}

fn symdyn(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn write_config(dir: &Path, text: &str) -> PathBuf {
    let p = dir.join("config.json");
    fs::write(&p, text).unwrap();
    p
}

fn read_outputs(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap())
        .filter(|e| e.file_name() != "timing.json")
        .map(|e| (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap()))
        .collect();
    files.sort();
    files
}

const SMALL: &str = r#"{
  "shift": { "type": "sft", "alphabet": ["0", "1"], "forbidden": ["11"] },
  "analyses": [
    { "kind": "pressure_estimate", "n_max": 12 },
    { "kind": "sync_triple", "tau": 0, "seed_v": "0", "seed_w": "0", "cert_depth": 8 },
    { "kind": "free_family", "source": { "type": "triple" }, "depth": 10, "check_depth": 8 },
    { "kind": "tower", "depth": 10, "n_max": 16 }
  ]
}"#;

#[test]
fn run_writes_report_and_tables() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), SMALL);
    let out = tmp.path().join("out");
    let o = symdyn(&["run", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let report: serde_json::Value = serde_json::from_slice(&fs::read(out.join("report.json")).unwrap()).unwrap();
    let analyses = report["analyses"].as_array().unwrap();
    assert_eq!(analyses.len(), 4);
    assert!(analyses.iter().all(|a| a["status"] == "ok"), "{report:#}");
    assert!(out.join("timing.json").exists());
    assert!(read_outputs(&out).iter().any(|(name, _)| name.ends_with(".csv")));
}

#[test]
fn shipped_configs_validate() {
    for entry in fs::read_dir(configs_dir()).unwrap() {
        let path = entry.unwrap().path();
        let o = symdyn(&["validate", path.to_str().unwrap()]);
        assert!(o.status.success(), "{}: {}", path.display(), String::from_utf8_lossy(&o.stdout));
    }
}

#[test]
fn invalid_configs_exit_with_one() {
    let tmp = tempfile::tempdir().unwrap();
    let missing = tmp.path().join("missing.json");
    assert_eq!(symdyn(&["run", missing.to_str().unwrap()]).status.code(), Some(1));

    let cfg = write_config(tmp.path(), "{ \"shift\": { \"type\": \"sft\" ");
    let o = symdyn(&["validate", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line"));

    let bad_word = SMALL.replace("\"seed_v\": \"0\"", "\"seed_v\": \"2\"");
    let cfg = write_config(tmp.path(), &bad_word);
    assert_eq!(symdyn(&["validate", cfg.to_str().unwrap()]).status.code(), Some(1));
    assert_eq!(symdyn(&["run", cfg.to_str().unwrap()]).status.code(), Some(1));

    let no_triple = SMALL.replace(r#"{ "kind": "sync_triple", "tau": 0, "seed_v": "0", "seed_w": "0", "cert_depth": 8 },"#, "");
    let cfg = write_config(tmp.path(), &no_triple);
    assert_eq!(symdyn(&["validate", cfg.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn depth_guard_turns_deep_analyses_into_error_blocks() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), SMALL);
    let o = symdyn(&["validate", cfg.to_str().unwrap(), "--depth-guard", "9"]);
    assert!(o.status.success());
    assert!(String::from_utf8_lossy(&o.stdout).contains("warning"));
    let out = tmp.path().join("out");
    let o = symdyn(&["run", cfg.to_str().unwrap(), "--depth-guard", "9", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let report: serde_json::Value = serde_json::from_slice(&fs::read(out.join("report.json")).unwrap()).unwrap();
    let status: Vec<&str> = report["analyses"].as_array().unwrap().iter().map(|a| a["status"].as_str().unwrap()).collect();
    assert!(status.contains(&"error"));
    assert!(status.contains(&"ok"));
}

#[test]
fn unwritable_output_exits_with_two() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = write_config(tmp.path(), SMALL);
    let blocker = tmp.path().join("file");
    fs::write(&blocker, "").unwrap();
    let o = symdyn(&["run", cfg.to_str().unwrap(), "--out", blocker.join("sub").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn outputs_are_byte_identical_across_thread_counts() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = configs_dir().join("golden_sync.json");
    let mut runs = Vec::new();
    for threads in ["1", "8"] {
        let out = tmp.path().join(threads);
        let o = symdyn(&["run", cfg.to_str().unwrap(), "--threads", threads, "--out", out.to_str().unwrap()]);
        assert!(o.status.success());
        runs.push(read_outputs(&out));
    }
    assert!(runs[0].len() > 2);
    assert_eq!(runs[0], runs[1]);
}

#[test]
fn shipped_configs_round_trip() {
    for entry in fs::read_dir(configs_dir()).unwrap() {
        let text = fs::read_to_string(entry.unwrap().path()).unwrap();
        let config = parse_config(&text).unwrap();
        let again = parse_config(&serde_json::to_string(&config).unwrap()).unwrap();
        assert_eq!(config, again);
    }
}

fn word() -> impl Strategy<Value = String> {
    "[01]{1,4}"
}

fn shift() -> impl Strategy<Value = ShiftConfig> {
    prop_oneof![
        prop::collection::vec(word(), 0..3)
            .prop_map(|forbidden| ShiftConfig::Sft { alphabet: vec!["0".into(), "1".into()], forbidden }),
        (2usize..5).prop_map(|k| ShiftConfig::FullShift { k }),
        (3usize..9).prop_map(|k| ShiftConfig::CycleSft { k }),
        prop::collection::vec(1u32..6, 1..4).prop_map(|gaps| ShiftConfig::SGap { gaps, tail: None }),
    ]
}

fn collection() -> impl Strategy<Value = CollectionConfig> {
    prop_oneof![
        Just(CollectionConfig::Language),
        word().prop_map(|word| CollectionConfig::AvoidWord { word }),
        word().prop_map(|word| CollectionConfig::Powers { word }),
        prop::collection::vec(word(), 1..4).prop_map(|words| CollectionConfig::Explicit { words }),
    ]
}

fn analysis() -> impl Strategy<Value = AnalysisConfig> {
    prop_oneof![
        (collection(), 1usize..30, prop::option::of(0.0f64..1.0))
            .prop_map(|(collection, n_max, margin)| AnalysisConfig::PressureEstimate { collection, n_max, margin }),
        Just(AnalysisConfig::EntropyExact {}),
        (1usize..20).prop_map(|depth| AnalysisConfig::Decipherability { depth }),
        prop::collection::vec(word(), 1..3).prop_map(|windows| AnalysisConfig::Marking { windows }),
    ]
}

fn potential() -> impl Strategy<Value = PotentialConfig> {
    prop_oneof![
        Just(PotentialConfig::Named("zero".into())),
        prop::collection::btree_map("[01]", -3.0f64..3.0, 1..3)
            .prop_map(|table| PotentialConfig::Table { range: 1, table }),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn config_serialisation_round_trips(
        shift in shift(),
        potential in potential(),
        analyses in prop::collection::vec(analysis(), 0..4),
    ) {
        let config = ExperimentConfig { shift, potential, analyses, output: Default::default() };
        let text = serde_json::to_string_pretty(&config).unwrap();
        prop_assert_eq!(parse_config(&text).unwrap(), config);
    }
}
