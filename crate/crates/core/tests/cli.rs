//! End-to-end runs of the `pleja` binary.

use std::path::Path;
use std::process::Command;

use pleja::leja::load_sequence;

fn pleja(args: &[&str], threads: Option<usize>) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_pleja"));
    cmd.args(args);
    match threads {
        Some(n) => cmd.env("PLEJA_THREADS", n.to_string()),
        None => cmd.env_remove("PLEJA_THREADS"),
    };
    let out = cmd.output().expect("binary runs");
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn intertwine_with_verification() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    assert_eq!(pleja(&["leja", "--set", "interval:-1,1", "--dmax", "10", "--out", p(&a)], None).0, 0);
    assert_eq!(pleja(&["leja", "--set", "circle:0,0,1", "--dmax", "10", "--out", p(&b)], None).0, 0);
    let (out, report) = (dir.path().join("ab.json"), dir.path().join("report.json"));
    let (code, line) = pleja(
        &["intertwine", "--left", p(&a), "--right", p(&b), "--n", "66", "--verify", "--out", p(&out), "--report", p(&report)],
        None,
    );
    assert_eq!(code, 0, "{line}");
    assert_eq!(load_sequence(&out).unwrap().len(), 66);
    let rep: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report).unwrap()).unwrap();
    let worst = rep["max_residual"].as_f64().unwrap();
    assert!(worst < 1e-8, "max residual {worst}");
    assert!(line.contains("factorization_residual="));
}

#[test]
fn point_files_do_not_depend_on_thread_count() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for threads in [1, 2, 8] {
        let out = dir.path().join(format!("sq{threads}.json"));
        let (code, _) = pleja(&["leja", "--set", "square:-1,1", "--dmax", "8", "--out", p(&out)], Some(threads));
        assert_eq!(code, 0);
        let out2 = dir.path().join(format!("c{threads}.json"));
        let (code, _) = pleja(
            &["--threads", &threads.to_string(), "leja", "--set", "circle:0,0,1", "--dmax", "200", "--out", p(&out2)],
            None,
        );
        assert_eq!(code, 0);
        files.push((std::fs::read(&out).unwrap(), std::fs::read(&out2).unwrap()));
    }
    assert!(files.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn artifacts_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let seq = dir.path().join("s.json");
    assert_eq!(pleja(&["leja", "--set", "square:-1,1", "--dmax", "4", "--out", p(&seq)], None).0, 0);
    let loaded = load_sequence(&seq).unwrap();
    let again = dir.path().join("s2.json");
    pleja::leja::save_sequence(&loaded, &again).unwrap();
    assert_eq!(std::fs::read(&seq).unwrap(), std::fs::read(&again).unwrap());

    let mesh = dir.path().join("m.csv");
    assert_eq!(pleja(&["mesh", "--set", "interval:-1,1", "--degree", "5", "--out", p(&mesh)], None).0, 0);
    let m = pleja::meshes::load_mesh(&mesh).unwrap();
    let mesh2 = dir.path().join("m2.csv");
    pleja::meshes::save_mesh(&m, &mesh2).unwrap();
    assert_eq!(std::fs::read(&mesh).unwrap(), std::fs::read(&mesh2).unwrap());
}

#[test]
fn pipeline_commands() {
    let dir = tempfile::tempdir().unwrap();
    let seq = dir.path().join("c.json");
    let (code, line) = pleja(&["leja", "--set", "circle:0,0,1", "--dmax", "63", "--out", p(&seq)], None);
    assert_eq!(code, 0);
    assert!(line.starts_with("points=64"), "{line}");
    let (code, line) = pleja(&["green", "--in", p(&seq), "--set", "circle:0,0,1", "--z", "2,0"], None);
    assert_eq!(code, 0, "{line}");
    let emp = dir.path().join("e.csv");
    assert_eq!(pleja(&["verify", "--in", p(&seq), "--out", p(&emp)], None).0, 0);
    assert_eq!(std::fs::read_to_string(&emp).unwrap().lines().count(), 64);
    let hist = dir.path().join("h.csv");
    let (code, line) = pleja(
        &["measure", "--in", p(&seq), "--degree", "63", "--axis", "angle", "--bins", "8", "--out", p(&hist)],
        None,
    );
    assert_eq!(code, 0, "{line}");
    let (code, _) = pleja(&["diameter", "--in", p(&seq)], None);
    assert_eq!(code, 0);
    // a missing input is a configuration error
    assert_eq!(pleja(&["green", "--in", p(&dir.path().join("none.json")), "--set", "circle:0,0,1", "--z", "2,0"], None).0, 2);
}
