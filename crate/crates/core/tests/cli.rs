use std::path::Path;
use std::process::Command;

use serde_json::Value;
use xnum::fixtures::{fig1a, fig1b};
use xnum::io::{serialize_graph, Document};

fn run(args: &[&str]) -> (i32, Value) {
    let out = Command::new(env!("CARGO_BIN_EXE_xnum")).args(args).output().unwrap();
    let code = out.status.code().unwrap();
    let v = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    (code, v)
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn figure_fixtures() {
    let dir = tempfile::tempdir().unwrap();
    let a = write(dir.path(), "fig1a.json", &serialize_graph(&Document::from_anchored(&fig1a())));
    let (code, v) = run(&["solve", "anchored", "--in", &a]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["value"]["text"], "2");
    assert_eq!(v["result"]["status"], "optimal");
    let b = write(dir.path(), "fig1b.json", &serialize_graph(&Document::from_pp(&fig1b())));
    let (code, v) = run(&["solve", "pp-special", "--in", &b]);
    assert_eq!(code, 0);
    assert_eq!(v["result"]["value"]["text"], "4");
    assert_eq!(run(&["verify", "pp", "--in", &b]).0, 0);
    let (code, v) = run(&["solve", "decide", "--in", &a, "--k", "1"]);
    assert_eq!((code, v["result"]["at_most"].clone()), (0, Value::Bool(false)));
    let (code, v) = run(&["solve", "anchored", "--in", &a, "--budget", "1"]);
    assert_eq!((code, v["result"]["status"].clone()), (1, "unknown".into()));
}

#[test]
fn generated_instances_verify() {
    let dir = tempfile::tempdir().unwrap();
    let frame = dir.path().join("frame.json");
    let (code, v) = run(&["gen", "frame", "--k", "2", "--omega", "symbolic", "--out", frame.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(v["result"]["gamma"]["text"].as_str().unwrap().starts_with("2*w^90"));
    let (code, v) = run(&["verify", "frame", "--in", frame.to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(run(&["verify", "pp", "--in", frame.to_str().unwrap()]).0, 0);

    let cnf = write(dir.path(), "phi.cnf", "p cnf 2 2\n1 -2 0\n2 0\n");
    let sat = dir.path().join("sat.json");
    assert_eq!(run(&["gen", "sat", "--cnf", &cnf, "--out", sat.to_str().unwrap()]).0, 0);
    let (code, v) = run(&["verify", "thm21", "--in", sat.to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
    let concrete = dir.path().join("sat_w.json");
    assert_eq!(run(&["gen", "sat", "--cnf", &cnf, "--w", "5000", "--out", concrete.to_str().unwrap()]).0, 0);
    assert_eq!(run(&["verify", "thm21", "--in", concrete.to_str().unwrap()]).0, 0);
    assert_eq!(run(&["verify", "frame", "--in", sat.to_str().unwrap()]).0, 1);

    let comp = dir.path().join("comp.json");
    assert_eq!(run(&["gen", "compose", "--cnf", &cnf, "--out", comp.to_str().unwrap()]).0, 0);
    assert_eq!(run(&["verify", "pp", "--in", comp.to_str().unwrap()]).0, 0);
    let (code, v) = run(&["transform", "almost-planar", "--in", comp.to_str().unwrap(), "--plan-only"]);
    assert_eq!(code, 0, "{v}");
    assert!(v["result"]["predicted_vertices"].as_str().unwrap().parse::<u64>().unwrap() > 1_000_000);
    assert_eq!(run(&["transform", "almost-planar", "--in", comp.to_str().unwrap()]).0, 1);
}

#[test]
fn transform_toy() {
    let text = r#"{
      "vertices": [{"id":"a1"},{"id":"a2"},{"id":"b1"},{"id":"a3"},{"id":"b2"},{"id":"b3"},{"id":"x"},{"id":"y"}],
      "edges": [
        {"u":"x","v":"a1","w":{"terms":[[0,1,1]]}},{"u":"x","v":"a2","w":{"terms":[[0,1,1]]}},{"u":"x","v":"a3","w":{"terms":[[0,1,1]]}},
        {"u":"y","v":"b1","w":{"terms":[[0,1,1]]}},{"u":"y","v":"b2","w":{"terms":[[0,1,1]]}},{"u":"y","v":"b3","w":{"terms":[[0,1,1]]}}
      ],
      "anchors": ["a1","a2","b1","a3","b2","b3"],
      "parts": {"p1":["a1","a2","a3","x"],"p2":["b1","b2","b3","y"]}
    }"#;
    let dir = tempfile::tempdir().unwrap();
    let inp = write(dir.path(), "toy.json", text);
    let out = dir.path().join("g.json");
    let (code, v) = run(&["transform", "almost-planar", "--in", &inp, "--m", "3", "--h", "2", "--scaled", "--with-edge", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
    let (code, v) = run(&["solve", "exact", "--in", out.to_str().unwrap()]);
    assert_eq!((code, v["result"]["value"]["text"].clone()), (0, "1".into()));
    assert_eq!(run(&["transform", "almost-planar", "--in", &inp, "--m", "3"]).0, 1);
}

#[test]
fn drawings_render_and_eval() {
    let dir = tempfile::tempdir().unwrap();
    let mut doc = Document::from_anchored(&fig1a());
    let a = write(dir.path(), "a.json", &serialize_graph(&doc));
    let (_, v) = run(&["solve", "anchored", "--in", &a]);
    let p: xnum::drawing::Planarization = serde_json::from_value(v["result"]["planarization"].clone()).unwrap();
    doc.planarization = Some(p.clone());
    let good = write(dir.path(), "good.json", &serialize_graph(&doc));
    let (code, v) = run(&["verify", "drawing", "--in", &good]);
    assert_eq!((code, v["result"]["weight"]["text"].clone()), (0, "2".into()));
    let mut bad = p;
    let e = bad.crossings.iter().position(|l| !l.is_empty()).unwrap();
    bad.crossings[e].clear();
    doc.planarization = Some(bad);
    let bad = write(dir.path(), "bad.json", &serialize_graph(&doc));
    assert_eq!(run(&["verify", "drawing", "--in", &bad]).0, 1);

    let svg1 = run(&["render", "--in", &a, "--format", "svg", "--seed", "7"]).1;
    let svg2 = run(&["render", "--in", &a, "--format", "svg", "--seed", "7"]).1;
    assert_eq!(svg1, svg2);
    assert!(svg1["result"]["text"].as_str().unwrap().starts_with("<svg"));
    let dot = run(&["render", "--in", &a, "--format", "dot"]).1;
    assert!(dot["result"]["text"].as_str().unwrap().contains("a1"));

    let (code, v) = run(&["eval", "gamma-plus", "--k", "2"]);
    assert_eq!(code, 0);
    assert!(v["result"]["poly"]["text"].as_str().unwrap().contains("w^34"));
    assert_eq!(run(&["eval", "shift", "--k", "1"]).0, 1);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["bogus"]).0, 2);
    assert_eq!(run(&["gen", "frame"]).0, 2);
    assert_eq!(run(&["render", "--in", "x", "--format", "png"]).0, 2);
    let (code, v) = run(&["solve", "exact", "--in", "/nonexistent.json"]);
    assert_eq!((code, v["ok"].clone()), (1, Value::Bool(false)));
}
