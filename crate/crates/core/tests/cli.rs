use std::path::Path;

use gdom::cli::{read_records, run};
use serde_json::Value;

fn gdom(log: &Path, args: &[&str]) -> (i32, String, String) {
    let mut argv = vec!["gdom", "--log-dir", log.to_str().unwrap()];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(text: &str) -> Value {
    serde_json::from_str(text).unwrap_or_else(|e| panic!("{e}: {text}"))
}

#[test]
fn check_json_is_replayable() {
    let dir = tempfile::tempdir().unwrap();
    let a = gdom(
        dir.path(),
        &["--json", "check", "heat_trace_frac", "K4", "K3"],
    );
    let b = gdom(
        dir.path(),
        &["--json", "check", "heat_trace_frac", "K4", "K3"],
    );
    assert_eq!(a.0, 0);
    assert_eq!(a.1, b.1);
    let v = json(&a.1);
    assert_eq!(v["verdict"], "holds");
    assert_eq!(v["points"].as_array().unwrap().len(), 13);

    let records = read_records(dir.path()).unwrap();
    assert_eq!(records.len(), 2);
    assert_eq!(records[0].payload, records[1].payload);
    assert_eq!(records[0].inputs, records[1].inputs);
    assert_eq!(records[0].exit_code, 0);
    assert_eq!(records[0].schema, 1);
}

#[test]
fn graph_files_in_every_format() {
    let dir = tempfile::tempdir().unwrap();
    let edges = dir.path().join("c4.txt");
    std::fs::write(&edges, "4\n0 1\n1 2\n2 3\n3 0\n").unwrap();
    let g6 = dir.path().join("k3.g6");
    std::fs::write(&g6, "Bw\n").unwrap();
    let js = dir.path().join("p2.json");
    std::fs::write(&js, r#"{"n": 2, "edges": [[0, 1]]}"#).unwrap();
    let (code, out, err) = gdom(
        dir.path(),
        &[
            "--json",
            "relate",
            edges.to_str().unwrap(),
            js.to_str().unwrap(),
        ],
    );
    assert_eq!(code, 0, "{err}");
    assert_eq!(json(&out)["domination"]["holds"], true);
    let (code, out, _) = gdom(dir.path(), &["--json", "analyze", g6.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(
        json(&out)["spanning_trees"].to_string().trim_matches('"'),
        "3"
    );
}

#[test]
fn bad_input_exits_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "3\n0 1\n1 7\n").unwrap();
    let (code, _, err) = gdom(dir.path(), &["analyze", bad.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(!err.is_empty());
    let (code, _, _) = gdom(dir.path(), &["check", "no_such_id", "K4", "K3"]);
    assert_eq!(code, 3);
    let records = read_records(dir.path()).unwrap();
    assert!(records.iter().all(|r| r.exit_code == 3));
}

#[test]
fn hunt_is_deterministic_per_seed() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "--json",
        "hunt",
        "tree_product",
        "--trials",
        "40",
        "--seed",
        "9",
        "--max-n",
        "7",
    ];
    let (c1, o1, _) = gdom(dir.path(), &args);
    let (c2, o2, _) = gdom(dir.path(), &args);
    assert_eq!((c1, c2), (0, 0));
    let (mut a, mut b) = (json(&o1), json(&o2));
    a.as_object_mut().unwrap().remove("elapsed_s");
    b.as_object_mut().unwrap().remove("elapsed_s");
    assert_eq!(a, b);
    assert_eq!(a["violations"].as_array().unwrap().len(), 0);
    let records = read_records(dir.path()).unwrap();
    assert_eq!(records[0].seed, Some(9));
}

#[test]
fn hunt_archives_violations() {
    let dir = tempfile::tempdir().unwrap();
    let (code, out, _) = gdom(
        dir.path(),
        &[
            "hunt",
            "vertex_counting:independent_sets",
            "--relation",
            "domination",
            "--trials",
            "30",
            "--max-n",
            "7",
            "--seed",
            "2",
        ],
    );
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("violation at trial"));
    let archived = std::fs::read_dir(dir.path().join("counterexamples"))
        .unwrap()
        .count();
    assert!(archived > 0);
}

#[test]
fn report_lists_recent_runs() {
    let dir = tempfile::tempdir().unwrap();
    gdom(dir.path(), &["check", "spanning_tree", "K4", "K3"]);
    gdom(
        dir.path(),
        &["check", "koteljanskii_step", "P3", "--sets", "0,1;1,2"],
    );
    let (code, out, _) = gdom(dir.path(), &["report", "--last", "1"]);
    assert_eq!(code, 0);
    assert!(out.contains("koteljanskii_step"), "{out}");
    assert!(!out.contains("spanning_tree"), "{out}");
    assert_eq!(read_records(dir.path()).unwrap().len(), 2);
}
