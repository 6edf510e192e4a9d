use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use tempfile::TempDir;

struct Workspace {
    dir: TempDir,
}

impl Workspace {
    fn new() -> Workspace {
        Workspace {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn file(&self, name: &str, contents: &str) -> PathBuf {
        let path = self.dir.path().join(name);
        fs::write(&path, contents).unwrap();
        path
    }
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clustergroups"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

const LINEAR_A3: &str = "3\n1 2\n2 3\n";
const TRIANGLE: &str = "3\n1 2\n2 3\n3 1\n";
const EXAMPLE: &str = r#"{"n": 4, "arrows": [[2, 1, 1], [3, 2, 1], [1, 3, 1], [4, 3, 1]]}"#;

#[test]
fn mutate() {
    let ws = Workspace::new();
    let a3 = ws.file("a3.txt", LINEAR_A3);
    let a3 = a3.to_str().unwrap();

    let out = run(&["mutate", a3, "2", "--json"]);
    assert!(out.status.success());
    let q: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(q["arrows"], serde_json::json!([[1, 3, 1], [2, 1, 1], [3, 2, 1]]));

    let same = run(&["mutate", a3]);
    assert_eq!(stdout(&same), "3\n1 2 1\n2 3 1\n");
    let twice = run(&["mutate", a3, "3", "3"]);
    assert_eq!(stdout(&twice), stdout(&same));

    let bad = run(&["mutate", a3, "7"]);
    assert_eq!(bad.status.code(), Some(3));
}

#[test]
fn presentation_relator_counts() {
    let ws = Workspace::new();
    let count = |contents: &str| -> usize {
        let path = ws.file("q.txt", contents);
        let out = run(&["presentation", path.to_str().unwrap(), "--json"]);
        assert!(out.status.success());
        let p: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
        p["relators"].as_array().unwrap().len()
    };
    assert_eq!(count("2\n1 2\n"), 3);
    assert_eq!(count(TRIANGLE), 8);
    assert_eq!(count("1\n"), 1);

    let path = ws.file("t.txt", TRIANGLE);
    let text = stdout(&run(&["presentation", path.to_str().unwrap()]));
    assert!(text.contains("1 2 3 1 2 1 3 2\n"));
    assert!(text.contains("t1 t2 t3 t1 t2 t1 t3 t2 = e"));
}

#[test]
fn braid_graphs() {
    let ws = Workspace::new();
    let example = ws.file("example.json", EXAMPLE);
    let out = run(&["braid-graph", example.to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let g: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(g["vertices"], 5);
    let mut degree = [0usize; 6];
    for (_, e) in g["edges"].as_object().unwrap() {
        degree[e[0].as_u64().unwrap() as usize] += 1;
        degree[e[1].as_u64().unwrap() as usize] += 1;
    }
    let mut degrees = degree[1..].to_vec();
    degrees.sort_unstable();
    assert_eq!(degrees, vec![1, 1, 1, 2, 3]);

    let a1 = ws.file("a1.txt", "1\n");
    let dot = stdout(&run(&["braid-graph", a1.to_str().unwrap(), "--dot"]));
    assert!(dot.starts_with("graph braid {"));
    assert_eq!(dot.matches(" -- ").count(), 1);

    let a2 = ws.file("a2.txt", "2\n1 2\n");
    let dot = stdout(&run(&["braid-graph", a2.to_str().unwrap(), "--dot"]));
    assert_eq!(dot.matches(" -- ").count(), 2);

    let kronecker = ws.file("k.txt", "2\n1 2 2\n");
    assert_eq!(run(&["braid-graph", kronecker.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn triangulations_round_trip() {
    let ws = Workspace::new();
    let example = ws.file("example.json", EXAMPLE);
    let out = ws.dir.path().join("t.json");
    let status = run(&["triangulation-of", example.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert!(status.status.success());
    let t: serde_json::Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(t[0]["m"], 7);
    let back = run(&["quiver-of", out.to_str().unwrap(), "--json"]);
    let q: serde_json::Value = serde_json::from_str(&stdout(&back)).unwrap();
    let original: serde_json::Value = serde_json::from_str(EXAMPLE).unwrap();
    let mut arrows = original["arrows"].as_array().unwrap().clone();
    arrows.sort_by_key(|a| (a[0].as_u64(), a[1].as_u64()));
    assert_eq!(q["arrows"], serde_json::Value::Array(arrows));
}

#[test]
fn orders_and_types() {
    let ws = Workspace::new();
    let example = ws.file("example.json", EXAMPLE);
    assert_eq!(stdout(&run(&["order", example.to_str().unwrap()])), "120\n");
    assert_eq!(stdout(&run(&["type", example.to_str().unwrap()])), "A4\n");
    let split = ws.file("split.txt", "3\n1 2\n");
    assert_eq!(stdout(&run(&["type", split.to_str().unwrap()])), "A1 + A2\n");
    let kronecker = ws.file("k.txt", "2\n1 2 2\n");
    assert_eq!(stdout(&run(&["type", kronecker.to_str().unwrap()])), "not of mutation type A\n");

    let a3 = ws.file("a3.txt", LINEAR_A3);
    let capped = run(&["order", a3.to_str().unwrap(), "--cap-cosets", "5"]);
    assert_eq!(capped.status.code(), Some(2));
    let class = stdout(&run(&["mutation-class", a3.to_str().unwrap(), "--json"]));
    let class: serde_json::Value = serde_json::from_str(&class).unwrap();
    assert_eq!(class.as_array().unwrap().len(), 4);
}

#[test]
fn verification_suites() {
    let ws = Workspace::new();
    let example = ws.file("example.json", EXAMPLE);
    let ex = example.to_str().unwrap();

    let flip = run(&["verify", "flip-mutation", "--m", "7", "--json"]);
    assert!(flip.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&flip)).unwrap();
    assert_eq!(report["checked"], 168);
    assert_eq!(report["failures"], serde_json::json!([]));

    let lattice = run(&["verify", "lattice", "--quiver", ex, "--json"]);
    let report: serde_json::Value = serde_json::from_str(&stdout(&lattice)).unwrap();
    assert_eq!(report["checked"], 512);

    let order = run(&["verify", "order", "--n", "5"]);
    assert!(order.status.success());
    assert!(stdout(&order).contains("expected order 720"));

    for args in [
        vec!["verify", "braid-graph", "--n", "3"],
        vec!["verify", "group-iso", "--quiver", ex],
        vec!["verify", "group-iso", "--n", "3"],
        vec!["verify", "lattice-iso", "--quiver", ex],
        vec!["verify", "generator-intersection", "--n", "4"],
        vec!["verify", "parabolic", "--quiver", ex],
        vec!["verify", "parabolic", "--quiver", ex, "--subset", "1,2"],
        vec!["verify", "direct-product", "--a", "2", "--b", "2"],
        vec!["verify", "round-trip", "--n", "3"],
    ] {
        let out = run(&args);
        assert!(out.status.success(), "{args:?}: {}", stdout(&out));
        assert!(stdout(&out).starts_with("PASS"));
    }

    let capped = run(&["verify", "group-iso", "--quiver", ex, "--cap-cosets", "10"]);
    assert_eq!(capped.status.code(), Some(2));
}

#[test]
fn usage_errors() {
    assert_eq!(run(&["verify", "nonsense"]).status.code(), Some(3));
    assert_eq!(run(&["verify", "flip-mutation"]).status.code(), Some(3));
    assert_eq!(run(&["verify", "lattice"]).status.code(), Some(3));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(3));
    assert_eq!(run(&["order", "/nonexistent/quiver.txt"]).status.code(), Some(3));
    assert_eq!(run(&["order", "x", "--cap-cosets", "0"]).status.code(), Some(3));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["--version"]).status.code(), Some(0));

    let ws = Workspace::new();
    let bad = ws.file("bad.txt", "3\n1 2\n2 1\n");
    assert_eq!(run(&["order", bad.to_str().unwrap()]).status.code(), Some(3));
}
