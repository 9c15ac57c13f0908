use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture_config() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures/brands/config.toml")
}

fn sbs(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sbs")).args(args).output().expect("run sbs")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

/// Fixture config rewritten with absolute corpus path plus `extra` lines.
fn config_with(dir: &Path, replace: Option<(&str, &str)>) -> PathBuf {
    let fixture = fixture_config();
    let mut text = fs::read_to_string(&fixture).unwrap();
    let corpus = fixture.parent().unwrap().join("corpus.csv");
    text = text.replace(
        "corpus = \"corpus.csv\"",
        &format!("corpus = {:?}", corpus.to_string_lossy()),
    );
    if let Some((from, to)) = replace {
        assert!(text.contains(from));
        text = text.replace(from, to);
    }
    let path = dir.join("config.toml");
    fs::write(&path, text).unwrap();
    path
}

#[test]
fn run_writes_outputs_and_exits_zero() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let cfg = fixture_config();
    let result = sbs(&["run", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "--workers", "3"]);
    assert!(result.status.success(), "{}", stderr(&result));
    for name in ["results.csv", "manifest.json", "charts.json", "report.html", "network_2024-03-04.net"] {
        assert!(out.join(name).is_file(), "{name}");
    }
    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["config"]["workers"], 3);
}

#[test]
fn seed_override_reaches_manifest_and_topics() {
    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("out");
    let cfg = fixture_config();
    let result = sbs(&["run", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "--seed", "99"]);
    assert!(result.status.success(), "{}", stderr(&result));
    let manifest: serde_json::Value = serde_json::from_str(&fs::read_to_string(out.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(manifest["seed"], 99);
    let topics: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(out.join("topics_2024-03-04.json")).unwrap()).unwrap();
    assert_eq!(topics["seed"], 99);
}

#[test]
fn unknown_standardization_exits_two() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = config_with(tmp.path(), Some(("standardization = \"z_score\"", "standardization = \"rank\"")));
    let result = sbs(&["run", "--config", cfg.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(2));
    assert!(stderr(&result).contains("invalid config"), "{}", stderr(&result));
}

#[test]
fn missing_config_file_is_runtime_failure() {
    let result = sbs(&["run", "--config", "/nonexistent/config.toml"]);
    assert_eq!(result.status.code(), Some(1));
    assert!(stderr(&result).contains("config: "), "{}", stderr(&result));
}

#[test]
fn missing_corpus_exits_one_with_stage_tag() {
    let tmp = tempfile::tempdir().unwrap();
    let cfg = config_with(tmp.path(), None);
    let text = fs::read_to_string(&cfg).unwrap();
    let text = text
        .lines()
        .map(|l| if l.starts_with("corpus = ") { "corpus = \"gone.csv\"" } else { l })
        .collect::<Vec<_>>()
        .join("\n");
    fs::write(&cfg, text).unwrap();
    let out = tmp.path().join("out");
    let result = sbs(&["run", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(result.status.code(), Some(1));
    assert!(stderr(&result).contains("ingest: "), "{}", stderr(&result));
}

#[test]
fn export_pajek_prints_interval_network() {
    let cfg = fixture_config();
    let result = sbs(&["export-pajek", "--config", cfg.to_str().unwrap(), "--interval", "2024-03-04"]);
    assert!(result.status.success(), "{}", stderr(&result));
    let text = String::from_utf8(result.stdout).unwrap();
    assert!(text.starts_with("*Vertices "));
    assert!(text.contains("\"gamma\""));
    assert!(text.contains("*Edges\n"));

    let tmp = tempfile::tempdir().unwrap();
    let out = tmp.path().join("run");
    assert!(sbs(&["run", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap()]).status.success());
    // same bytes as the file the full run writes
    assert_eq!(fs::read_to_string(out.join("network_2024-03-04.net")).unwrap(), text);

    let file = tmp.path().join("week.net");
    let result = sbs(&[
        "export-pajek",
        "--config",
        cfg.to_str().unwrap(),
        "--interval",
        "2024-03-04",
        "--out",
        file.to_str().unwrap(),
    ]);
    assert!(result.status.success());
    assert_eq!(fs::read_to_string(file).unwrap(), text);
}

#[test]
fn export_pajek_unknown_interval_exits_two() {
    let cfg = fixture_config();
    let result = sbs(&["export-pajek", "--config", cfg.to_str().unwrap(), "--interval", "1999-01-01"]);
    assert_eq!(result.status.code(), Some(2));
    assert!(stderr(&result).contains("no interval labelled"));
}

#[test]
fn version_prints_package_version() {
    let result = sbs(&["version"]);
    assert!(result.status.success());
    assert_eq!(String::from_utf8(result.stdout).unwrap(), format!("sbs {}\n", env!("CARGO_PKG_VERSION")));
}

#[test]
fn zero_workers_rejected_by_argument_parser() {
    let cfg = fixture_config();
    let result = sbs(&["run", "--config", cfg.to_str().unwrap(), "--workers", "0"]);
    assert_eq!(result.status.code(), Some(2));
}
