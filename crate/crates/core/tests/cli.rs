//! End-to-end runs of the `kostka` binary, with and without a cache.

use std::path::Path;
use std::process::{Command, Output};

use kostka::format::{KostkaDoc, ModuleDoc};
use kostka::kl::{default_rank, kl_element};
use kostka::kostka::{kostka, marked_table};
use kostka::macdonald::e_tilde_element;
use kostka::Composition;

fn run(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_kostka"));
    cmd.env_remove("KOSTKA_CACHE");
    if let Some(dir) = cache {
        cmd.arg("--cache").arg(dir);
    }
    cmd.args(args).output().expect("binary runs")
}

fn stdout(args: &[&str], cache: Option<&Path>) -> String {
    let out = run(args, cache);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn small() -> Vec<Composition> {
    (0..=3).flat_map(|d| Composition::all_of_weight(d, d as usize + 1)).collect()
}

#[test]
fn pretty_examples() {
    assert_eq!(stdout(&["kostka", "--lambda", "3,1", "--mu", "2,2"], None), "t + t*q + t^2*q\n");
    assert_eq!(
        stdout(&["compute-e", "--mu", "1", "--rank", "2", "--basis", "monomial"], None),
        "(1 - t*q)*z1 + (1 - t)*z2\n"
    );
    assert_eq!(stdout(&["compute-e", "--mu", "", "--rank", "3"], None), "1\n");
    assert_eq!(
        stdout(&["compute-kl", "--lambda", "1,0", "--rank", "3"], None),
        "v^2*M(0,0,1) + v*M(0,1) + M(1)\n"
    );
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        &["kostka", "--lambda", "3,x", "--mu", "2,2"][..],
        &["compute-e", "--mu", "1,1", "--rank", "1"],
        &["compute-kl", "--lambda", "0,0,1", "--rank", "2"],
        &["frobnicate"],
    ] {
        assert_eq!(run(args, None).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn module_documents_round_trip_through_cache() {
    let dir = tempfile::tempdir().unwrap();
    for x in small() {
        let s = x.to_string();
        let n = default_rank(&x, 0);
        let rank = n.to_string();
        for (sub, flag) in [("compute-e", "--mu"), ("compute-kl", "--lambda")] {
            let args = [sub, flag, s.as_str(), "--rank", rank.as_str(), "--format", "json"];
            let cold = stdout(&args, None);
            let first = stdout(&args, Some(dir.path()));
            let warm = stdout(&args, Some(dir.path()));
            assert_eq!(cold, first, "{args:?}");
            assert_eq!(first, warm, "{args:?}");
            let doc: ModuleDoc = serde_json::from_str(&cold).unwrap();
            let expect = if sub == "compute-e" {
                (*e_tilde_element(&x, n).unwrap()).clone()
            } else {
                (*kl_element(&x, n).unwrap().element).clone()
            };
            assert_eq!(doc.element().unwrap(), expect, "{args:?}");
        }
    }
    assert_eq!(kostka::cache::Cache::open(dir.path()).unwrap().len().unwrap(), 2 * small().len());
}

#[test]
fn kostka_documents_round_trip_through_cache() {
    let dir = tempfile::tempdir().unwrap();
    for d in 0..=3 {
        let all = Composition::all_of_weight(d, 2);
        for lam in &all {
            for mu in &all {
                let (l, m) = (lam.to_string(), mu.to_string());
                let args = ["kostka", "--lambda", l.as_str(), "--mu", m.as_str(), "--marked", "--format", "json"];
                let cold = stdout(&args, None);
                let first = stdout(&args, Some(dir.path()));
                let warm = stdout(&args, Some(dir.path()));
                assert_eq!(cold, first, "{args:?}");
                assert_eq!(first, warm, "{args:?}");
                let doc: KostkaDoc = serde_json::from_str(&cold).unwrap();
                assert_eq!(doc.result, kostka(lam, mu).unwrap());
                let rows = doc.marked.unwrap();
                let table = marked_table(lam, mu).unwrap();
                assert_eq!(rows.len(), table.len());
                for (row, term) in rows.iter().zip(&table) {
                    assert_eq!(row.diagram, term.diagram.to_string());
                    assert_eq!(row.value, term.value);
                }
            }
        }
    }
}

#[test]
fn scan_writes_report_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("report.json");
    let csv = dir.path().join("table.csv");
    let out = run(
        &["scan", "--max-weight", "2", "--report", report.to_str().unwrap(), "--csv", csv.to_str().unwrap()],
        None,
    );
    assert_eq!(out.status.code(), Some(0));
    let json: serde_json::Value = serde_json::from_slice(&std::fs::read(&report).unwrap()).unwrap();
    assert_eq!(json["format"], "kostka-scan/1");
    assert_eq!(json["violations"].as_array().unwrap().len(), 0);
    let table = std::fs::read_to_string(&csv).unwrap();
    assert!(table.starts_with("lambda,mu,K\n"));
    assert_eq!(table.lines().count() as u64, json["pairs"].as_u64().unwrap() + 1);
}
