use serde_json::Value;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_kappalat"));
    c.env_remove("KAPPALAT_BUDGET");
    c
}

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn json(path: &Path) -> Value {
    let o = run(&["analyze", path.to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn generated(dir: &tempfile::TempDir, file: &str, args: &[&str]) -> PathBuf {
    let out = dir.path().join(file);
    let mut full = vec!["generate"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", out.to_str().unwrap()]);
    let o = run(&full);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    out
}

fn strs(v: &Value) -> Vec<String> {
    v.as_array()
        .unwrap()
        .iter()
        .map(|s| s.as_str().unwrap().to_string())
        .collect()
}

fn covers(text: &str) -> Vec<(usize, usize)> {
    let mut c: Vec<(usize, usize)> = text
        .lines()
        .filter_map(|l| l.strip_prefix("cover "))
        .map(|l| {
            let (a, b) = l.split_once(' ').unwrap();
            (a.parse().unwrap(), b.parse().unwrap())
        })
        .collect();
    c.sort();
    c
}

#[test]
fn analyze_pentagon() {
    let r = json(&data("pentagon.lat"));
    assert_eq!(r["report-v"], 1);
    assert_eq!(r["flags"]["semidistributive"], true);
    assert_eq!(r["ji_count"], 3);
    assert_eq!(r["length"], 3);
    assert_eq!(r["extremal"]["classical"], true);
    assert_eq!(r["extremal"]["generalized"], true);
    assert_eq!(r["left_modular"]["lattice"], true);
    assert_eq!(strs(&r["left_modular"]["chain"]), ["bot", "y", "z", "top"]);
    assert_eq!(r["trim"], true);
    let kappa: Vec<(String, String)> = r["kappa"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| {
            (
                e["j"].as_str().unwrap().into(),
                e["kappa"].as_str().unwrap().into(),
            )
        })
        .collect();
    let want = [("x", "z"), ("y", "x"), ("z", "y")].map(|(a, b)| (a.to_string(), b.to_string()));
    assert_eq!(kappa, want);
    // counts agree with the quiver
    assert_eq!(
        r["left_modular"]["count"],
        r["quiver"]["successor_closed_sets"]
    );
    assert_eq!(
        r["quiver"]["linear_extensions"],
        r["quiver"]["extremal_chains"]
    );
}

#[test]
fn json_keys_are_stable() {
    let o = run(&[
        "analyze",
        data("pentagon.lat").to_str().unwrap(),
        "--format",
        "json",
    ]);
    let text = stdout(&o);
    let keys: Vec<&str> = text
        .lines()
        .filter(|l| l.starts_with("  \""))
        .map(|l| l.trim().split('"').nth(1).unwrap())
        .collect();
    assert_eq!(
        keys,
        [
            "report-v",
            "n",
            "length",
            "ji_count",
            "mi_count",
            "flags",
            "left_modular",
            "extremal",
            "trim",
            "spine",
            "kappa",
            "quiver",
            "bricks",
            "witnesses"
        ]
    );
}

#[test]
fn analyze_one_element() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("one.lat");
    std::fs::write(&p, "lattice-v1\nn=1\n").unwrap();
    let r = json(&p);
    assert_eq!(r["length"], 0);
    assert_eq!(r["ji_count"], 0);
    assert_eq!(r["extremal"]["classical"], true);
    assert_eq!(r["left_modular"]["lattice"], true);
}

#[test]
fn analyze_weak_order_s3() {
    let dir = tempfile::tempdir().unwrap();
    let p = generated(&dir, "s3.lat", &["weak_order", "--n", "3"]);
    let r = json(&p);
    assert_eq!(r["left_modular"]["lattice"], false);
    assert_eq!(r["left_modular"]["count"], 2);
    assert_eq!(strs(&r["left_modular"]["elements"]), ["123", "321"]);
    assert_eq!(r["quiver"]["acyclic"], false);
    // the reachable left modular set stops at the bottom
    assert_eq!(strs(&r["witnesses"]["not_left_modular_lattice"]), ["123"]);
}

#[test]
fn analyze_reads_stdin_and_is_deterministic() {
    let text = std::fs::read_to_string(data("pentagon.lat")).unwrap();
    let from_stdin = |format: &str| {
        let mut child = bin()
            .args(["analyze", "-", "--format", format])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .unwrap();
        child
            .stdin
            .take()
            .unwrap()
            .write_all(text.as_bytes())
            .unwrap();
        child.wait_with_output().unwrap()
    };
    for format in ["text", "json"] {
        let a = from_stdin(format);
        let b = run(&[
            "analyze",
            data("pentagon.lat").to_str().unwrap(),
            "--format",
            format,
        ]);
        assert_eq!(code(&a), 0);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(
            b.stdout,
            run(&[
                "analyze",
                data("pentagon.lat").to_str().unwrap(),
                "--format",
                format
            ])
            .stdout
        );
    }
    let t = stdout(&run(&["analyze", data("pentagon.lat").to_str().unwrap()]));
    assert!(t.contains("  semidistributive: true\n"));
}

#[test]
fn generate_families() {
    let dir = tempfile::tempdir().unwrap();
    let b3 = std::fs::read_to_string(generated(&dir, "b3.lat", &["boolean", "--n", "3"])).unwrap();
    assert!(b3.contains("\nn=8\n"));
    let tors = std::fs::read_to_string(generated(&dir, "ka2.lat", &["nakayama_tors", "--n", "2"]))
        .unwrap();
    let fig = std::fs::read_to_string(data("pentagon.lat")).unwrap();
    assert_eq!(covers(&tors), covers(&fig));
    assert!(tors.contains("# meta algebra nakayama n=2\n"));
    let l5 = generated(
        &dir,
        "l5.lat",
        &["nakayama_tors", "--n", "3", "--forbid", "1..3"],
    );
    let r = json(&l5);
    assert_eq!(r["n"], 12);
    assert_eq!(r["length"], 5);
    assert_eq!(r["left_modular"]["lattice"], true);
    assert_eq!(r["bricks"]["brick_directed"], true);
    assert_eq!(r["bricks"]["splitting_equals_left_modular"], true);
    let ds = std::fs::read_to_string(generated(
        &dir,
        "d.lat",
        &["downset", "--n", "3", "--rel", "0,1"],
    ))
    .unwrap();
    assert!(ds.contains("\nn=6\n"));
    for (fam, n) in [("chain", "4"), ("tamari", "4"), ("weak_order", "4")] {
        generated(&dir, "x.lat", &[fam, "--n", n]);
    }
}

#[test]
fn generate_errors() {
    assert_eq!(
        code(&run(&[
            "generate",
            "nakayama_tors",
            "--n",
            "3",
            "--forbid",
            "1..2"
        ])),
        2
    );
    assert_eq!(
        code(&run(&[
            "generate",
            "nakayama_tors",
            "--n",
            "3",
            "--forbid",
            "1-3"
        ])),
        2
    );
    assert_eq!(code(&run(&["generate", "weak_order", "--n", "9"])), 2);
    assert_eq!(code(&run(&["generate", "boolean"])), 2);
    assert_eq!(code(&run(&["generate", "cube", "--n", "2"])), 2);
    assert_eq!(code(&run(&["generate", "nakayama_tors", "--n", "7"])), 3);
    assert_eq!(
        code(&run(&[
            "generate",
            "nakayama_tors",
            "--n",
            "4",
            "--max-ind",
            "5"
        ])),
        3
    );
    assert_eq!(code(&run(&["generate", "boolean", "--n", "17"])), 3);
}

#[test]
fn verify_exit_codes() {
    let o = run(&["verify", data("pentagon.lat").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));

    let dir = tempfile::tempdir().unwrap();
    let s3 = generated(&dir, "s3.lat", &["weak_order", "--n", "3"]);
    let o = run(&["verify", s3.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("PASS lm-iff-extremal"));

    let o = run(&["verify", data("m3.lat").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("PASS lm-definition-witnesses"));
    assert!(out.contains("SKIP lm-three-criteria: skipped: not a κ-lattice"));

    assert_eq!(code(&run(&["verify", data("m9.lat").to_str().unwrap()])), 3);

    let bad = dir.path().join("bad.lat");
    std::fs::write(&bad, "lattice-v1\nn=3\ncover 0 1\ncover 0 2\n").unwrap();
    let o = run(&["verify", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("join"));
    assert_eq!(code(&run(&["verify", "/nonexistent/file.lat"])), 2);
}

#[test]
fn budgets() {
    let f = data("pentagon.lat");
    let f = f.to_str().unwrap();
    assert_eq!(code(&run(&["analyze", f, "--max-sets", "2"])), 3);
    assert_eq!(code(&run(&["analyze", f, "--max-sets", "4"])), 0);
    let o = bin()
        .args(["analyze", f])
        .env("KAPPALAT_BUDGET", "sets=1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 3);
    let o = bin()
        .args(["analyze", f, "--max-sets", "10"])
        .env("KAPPALAT_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    let o = bin()
        .args(["analyze", f])
        .env("KAPPALAT_BUDGET", "many")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);

    let dir = tempfile::tempdir().unwrap();
    let b3 = generated(&dir, "b3.lat", &["boolean", "--n", "3"]);
    let o = run(&["verify", b3.to_str().unwrap(), "--max-chains", "5"]);
    assert_eq!(code(&o), 3);
    assert!(stdout(&o).contains("BUDGET linext-round-trip"));
    assert_eq!(
        code(&run(&["verify", b3.to_str().unwrap(), "--max-chains", "6"])),
        0
    );
}

#[test]
fn dot_outputs() {
    let f = data("pentagon.lat");
    let o = run(&["dot", f.to_str().unwrap(), "--kind", "hasse"]);
    assert_eq!(code(&o), 0);
    let hasse = stdout(&o);
    assert!(hasse.starts_with("digraph"));
    assert_eq!(
        hasse
            .lines()
            .filter(|l| l.contains("[label=") && !l.contains("->"))
            .count(),
        5
    );
    assert_eq!(hasse.lines().filter(|l| l.contains("->")).count(), 5);
    assert!(hasse.contains("  n2 -> n3 [label=\"z\"];"));

    let lab = stdout(&run(&["dot", f.to_str().unwrap(), "--kind", "labelling"]));
    assert_eq!(lab.lines().filter(|l| l.contains("[label=")).count(), 3);
    let edges: Vec<&str> = lab
        .lines()
        .filter(|l| l.contains("->"))
        .map(str::trim)
        .collect();
    assert_eq!(edges, ["n1 -> n3;", "n3 -> n2;"]);

    let o = run(&[
        "dot",
        data("m3.lat").to_str().unwrap(),
        "--kind",
        "labelling",
    ]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("not a kappa-lattice"));
    // M3 still draws, without labels
    let o = run(&["dot", data("m3.lat").to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(!stdout(&o)
        .lines()
        .any(|l| l.contains("->") && l.contains("label")));

    assert_eq!(
        code(&run(&["dot", f.to_str().unwrap(), "--kind", "brick"])),
        2
    );
    let dir = tempfile::tempdir().unwrap();
    let ka2 = generated(&dir, "ka2.lat", &["nakayama_tors", "--n", "2"]);
    let out = dir.path().join("b.dot");
    let o = run(&[
        "dot",
        ka2.to_str().unwrap(),
        "--kind",
        "brick",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let bricks = std::fs::read_to_string(out).unwrap();
    assert!(bricks.contains("b0 [label=\"[2,2]\"]"));
    assert_eq!(bricks.lines().filter(|l| l.contains("->")).count(), 2);
}
