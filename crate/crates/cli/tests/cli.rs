use std::io::Write;
use std::process::{Command, Output, Stdio};

fn catherd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_catherd")).args(args).env_remove("CATHERD_BUDGET").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn solve_path_8() {
    let o = catherd(&["solve", "--graph", "path:8"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "3");
    let o = catherd(&["solve", "--graph", "path:8", "--vertex", "0", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], 1);
    let o = catherd(&["solve", "--graph", "cycle:6", "--no-component-restriction"]);
    assert_eq!(stdout(&o).trim(), "4");
}

#[test]
fn classify_pentagon() {
    let o = catherd(&["classify", "--graph", "cycle:5"]);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("Cut3/pentagon"), "{}", stdout(&o));
    let o = catherd(&["classify", "--graph", "cycle:6", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], "at_least4");
}

#[test]
fn verify_stars_passes() {
    let o = catherd(&["verify", "--suite", "stars", "--max-n", "9"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("PASS stars"));
    let o = catherd(&["verify", "--suite", "paths,cycles", "--json", "--seed", "5"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 2);
    assert_eq!(v[0]["seed"], 5);
}

#[test]
fn exit_codes() {
    assert_eq!(catherd(&["verify", "--suite", "nonsense"]).status.code(), Some(2));
    assert_eq!(catherd(&["solve"]).status.code(), Some(2));
    assert_eq!(catherd(&["solve", "--graph", "cycle:2"]).status.code(), Some(2));
    let o = Command::new(env!("CARGO_BIN_EXE_catherd"))
        .args(["solve", "--graph", "path:8"])
        .env("CATHERD_BUDGET", "solver_edges=3")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn edge_list_file_input() {
    let dir = std::env::temp_dir().join(format!("catherd-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("c4.txt");
    std::fs::write(&file, "# square\np 4\ne 0 1\ne 1 2\ne 2 3\ne 0 3\n").unwrap();
    let o = catherd(&["solve", "--graph", file.to_str().unwrap()]);
    assert_eq!(stdout(&o).trim(), "3");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn prune_emits() {
    let o = catherd(&["prune", "--graph", "star:6", "--emit", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["steps"].as_array().unwrap().len(), 3);
    let o = catherd(&["prune", "--graph", "star:6", "--emit", "dot"]);
    assert!(stdout(&o).starts_with("graph G {"));
    let o = catherd(&["prune", "--graph", "cycle:5", "--rules", "tree"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn structure_reports_bridge() {
    let o = catherd(&["structure", "--graph", "two_triangles_bridge", "--json", "--exact"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["evadibility"]["exact_cut"], 3);
    assert_eq!(v["blocks"]["bridges"].as_array().unwrap().len(), 1);
}

#[test]
fn challenge_on_ray() {
    let o = catherd(&["challenge", "--generator", "ray", "--cat", "median_path:6", "--herder", "ray_cut_behind", "--k", "6", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["outcome"]["outcome"], "survived_k");
    let o = catherd(&["challenge", "--generator", "binary_tree", "--herder", "random", "--seed", "7", "--k", "25"]);
    assert!(stdout(&o).contains("survived"), "{}", stdout(&o));
    assert_eq!(catherd(&["challenge", "--generator", "moebius", "--k", "3"]).status.code(), Some(2));
}

#[test]
fn play_as_cat() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_catherd"))
        .args(["play", "--graph", "path:3", "--as", "cat", "--hints"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"1\n1\n0\n2\n").unwrap();
    let o = child.wait_with_output().unwrap();
    let text = stdout(&o);
    assert!(text.contains("hint: best start"), "{text}");
    assert!(text.contains("cat must move to a different vertex in its component"), "{text}");
    assert!(text.contains("captured after 2 cuts"), "{text}");
}
