mod common;

use common::{house_raw, write_csv};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use tempfile::TempDir;

struct Fixture {
    dir: TempDir,
    data: PathBuf,
}

impl Fixture {
    fn new() -> Self {
        let dir = tempfile::tempdir().unwrap();
        let data = dir.path().join("house.csv");
        write_csv(&house_raw(400), &data);
        Fixture { dir, data }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn run(&self, args: &[&str]) -> Output {
        Command::new(env!("CARGO_BIN_EXE_eda")).current_dir(self.dir.path()).env_remove("EDA_WORKERS").args(args).output().unwrap()
    }
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn success_writes_default_named_html_and_nothing_to_stdout() {
    let f = Fixture::new();
    let o = f.run(&["plot", s(&f.data), "price"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    let html = std::fs::read_to_string(f.path("house.plot.price.html")).unwrap();
    assert!(html.starts_with("<!DOCTYPE html>"));
}

#[test]
fn configuration_errors_exit_one() {
    let f = Fixture::new();
    let o = f.run(&["plot", s(&f.data), "-c", "hist.bns=10"]);
    assert_eq!(code(&o), 1);
    assert!(stderr(&o).contains("hist.bins"), "{}", stderr(&o));
    assert_eq!(code(&f.run(&["plot", s(&f.data), "-c", "hist.bins=many"])), 1);
    assert_eq!(code(&f.run(&["plot", s(&f.data), "--workers", "0"])), 1);
    assert_eq!(code(&f.run(&["plot", s(&f.data), "--chunk-rows", "0"])), 1);
    assert_eq!(code(&f.run(&["summarize", s(&f.data)])), 1);
}

#[test]
fn data_errors_exit_two() {
    let f = Fixture::new();
    assert_eq!(code(&f.run(&["plot", s(&f.path("absent.csv"))])), 2);

    let o = f.run(&["plot", s(&f.data), "prise"]);
    assert_eq!(code(&o), 2);
    let err = stderr(&o);
    for col in ["price", "area", "city", "rooms", "kind"] {
        assert!(err.contains(col), "{err}");
    }

    // two categorical columns have no correlation view
    assert_eq!(code(&f.run(&["correlation", s(&f.data), "city", "kind"])), 2);

    let empty = f.path("empty.csv");
    std::fs::write(&empty, "").unwrap();
    assert_eq!(code(&f.run(&["report", s(&empty)])), 2);
}

#[test]
fn json_goes_to_stdout_only_when_asked() {
    let f = Fixture::new();
    let o = f.run(&["correlation", s(&f.data), "--json", "-"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], "1");
    assert!(f.path("house.correlation.html").exists());
}

#[test]
fn report_writes_html_and_json_files() {
    let f = Fixture::new();
    let (html, json) = (f.path("out.html"), f.path("out.json"));
    let o = f.run(&["report", s(&f.data), "--out", s(&html), "--json", s(&json)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&html).unwrap().contains("Missing Values"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert!(!v["panels"].as_array().unwrap().is_empty());
}

#[test]
fn bins_override_reaches_the_histogram() {
    let f = Fixture::new();
    let o = f.run(&["plot", s(&f.data), "price", "-c", "hist.bins=200", "--json", "-"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let hist = v["panels"].as_array().unwrap().iter().find(|p| p["kind"] == "histogram").unwrap();
    assert_eq!(hist["intermediate"]["counts"].as_array().unwrap().len(), 200);
    let kde = v["panels"].as_array().unwrap().iter().find(|p| p["kind"] == "kde").unwrap();
    assert_eq!(kde["intermediate"]["histogram"]["counts"].as_array().unwrap().len(), 50);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let f = Fixture::new();
    let cfg = f.path("eda.cfg");
    std::fs::write(&cfg, "hist.bins = 30\nkde.bins = 20\n").unwrap();
    let o = f.run(&["plot", s(&f.data), "price", "--config-file", s(&cfg), "-c", "hist.bins=40", "--json", "-"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let panels = v["panels"].as_array().unwrap();
    let bins = |kind: &str, path: &[&str]| {
        let mut x = &panels.iter().find(|p| p["kind"] == kind).unwrap()["intermediate"];
        for k in path {
            x = &x[*k];
        }
        x.as_array().unwrap().len()
    };
    assert_eq!(bins("histogram", &["counts"]), 40);
    assert_eq!(bins("kde", &["histogram", "counts"]), 20);
}

#[test]
fn progress_goes_to_stderr() {
    let f = Fixture::new();
    let o = f.run(&["missing", s(&f.data), "--workers", "2"]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    let err = stderr(&o);
    let progress: Vec<&str> = err.lines().filter(|l| l.starts_with("reduce/") || l.starts_with("finalize/")).collect();
    assert!(!progress.is_empty(), "{err}");
    for line in &progress {
        let parts: Vec<&str> = line.split('/').collect();
        let (done, total): (usize, usize) = (parts[1].parse().unwrap(), parts[2].parse().unwrap());
        assert!(done <= total, "{line}");
    }
    assert!(progress.iter().any(|l| l.starts_with("finalize/")));
}

#[test]
fn graph_dump_is_written() {
    let f = Fixture::new();
    let dump = f.path("graph.txt");
    let o = f.run(&["plot", s(&f.data), "area", "--dump-graph", s(&dump)]);
    assert_eq!(code(&o), 0, "{}", stderr(&o));
    assert!(!std::fs::read_to_string(&dump).unwrap().is_empty());
}

#[test]
fn help_exits_zero_on_stdout() {
    let f = Fixture::new();
    let o = f.run(&["--help"]);
    assert_eq!(code(&o), 0);
    assert!(String::from_utf8_lossy(&o.stdout).contains("report"));
}

#[test]
fn numeric_threshold_controls_inference() {
    let f = Fixture::new();
    let data = f.path("mixed.csv");
    // 90% of the cells parse as numbers
    let mut text = String::from("v\n");
    for i in 0..100 {
        text.push_str(&if i % 10 == 0 { "n/r\n".to_owned() } else { format!("{i}\n") });
    }
    std::fs::write(&data, text).unwrap();
    let kinds = |extra: &[&str]| {
        let mut args = vec!["plot", s(&data), "v", "--json", "-"];
        args.extend_from_slice(extra);
        let o = f.run(&args);
        assert_eq!(code(&o), 0, "{}", stderr(&o));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["panels"].as_array().unwrap().iter().map(|p| p["kind"].as_str().unwrap().to_owned()).collect::<Vec<_>>()
    };
    assert!(kinds(&[]).contains(&"bar".to_owned()));
    assert!(kinds(&["-c", "data.numeric_threshold=0.85"]).contains(&"histogram".to_owned()));
}
