use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn combdyn(dir: &Path, args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_combdyn"))
        .arg("--out")
        .arg(dir)
        .args(args)
        .current_dir(dir)
        .output()
        .unwrap();
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    out
}

fn small_config(dir: &Path) -> String {
    let path = dir.join("small.cfg");
    fs::write(&path, "grid = 8\nsamples = 20000\n").unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn step_by_step_matches_itself() {
    let dir = scratch("steps");
    let cfg = small_config(&dir);
    combdyn(&dir, &["--config", &cfg, "mesh-grid"]);
    combdyn(&dir, &["--config", &cfg, "--seed", "3", "sample-kuznetsov"]);
    combdyn(&dir, &["fmu", "--mesh", "mesh.txt", "--samples", "samples.csv", "--mu", "0.2"]);
    let digraph = fs::read_to_string(dir.join("digraph.txt")).unwrap();
    assert!(!digraph.is_empty());
    combdyn(&dir, &["morse", "--mesh", "mesh.txt", "--digraph", "digraph.txt"]);
    let first = fs::read_to_string(dir.join("morse.txt")).unwrap();
    combdyn(&dir, &["render", "--mesh", "mesh.txt", "--morse", "morse.txt"]);
    assert!(fs::read_to_string(dir.join("overlay.svg")).unwrap().starts_with("<svg"));

    combdyn(&dir, &["--config", &cfg, "--seed", "3", "sample-kuznetsov"]);
    combdyn(&dir, &["fmu", "--mesh", "mesh.txt", "--samples", "samples.csv", "--mu", "0.2"]);
    assert_eq!(fs::read_to_string(dir.join("digraph.txt")).unwrap(), digraph);
    combdyn(&dir, &["morse", "--mesh", "mesh.txt", "--digraph", "digraph.txt"]);
    assert_eq!(fs::read_to_string(dir.join("morse.txt")).unwrap(), first);
}

#[test]
fn multivector_route() {
    let dir = scratch("mvf");
    let cfg = dir.join("lv.cfg");
    fs::write(&cfg, "nx = 10\nny = 8\n").unwrap();
    let cfg = cfg.to_string_lossy().into_owned();
    combdyn(&dir, &["--config", &cfg, "mesh-grid", "--lv"]);
    combdyn(&dir, &["--config", &cfg, "sample-lv", "--mesh", "mesh.txt"]);
    combdyn(&dir, &["cvcmf", "--mesh", "mesh.txt", "--vectors", "vectors.csv", "--alpha", "14"]);
    combdyn(&dir, &["morse", "--mesh", "mesh.txt", "--mvf", "mvf.txt"]);
    let morse = fs::read_to_string(dir.join("morse.txt")).unwrap();
    assert!(morse.lines().any(|l| l.starts_with("set ")));
}

#[test]
fn small_sweep_and_barcode_render() {
    let dir = scratch("sweep");
    let cfg = small_config(&dir);
    let out = combdyn(&dir, &["--config", &cfg, "sweep-mu"]);
    assert!(!out.stdout.is_empty());
    assert!(dir.join("barcode.csv").exists() && dir.join("levels.csv").exists());
    combdyn(&dir, &["render", "--barcode", "barcode.csv"]);
    assert!(dir.join("barcode.svg").exists() && dir.join("diagram.svg").exists());
}

#[test]
fn bad_input_fails_cleanly() {
    let dir = scratch("bad");
    fs::write(dir.join("mesh.txt"), "not a mesh\n").unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_combdyn"))
        .args(["--out", dir.to_str().unwrap(), "morse", "--mesh", "mesh.txt", "--digraph", "x"])
        .current_dir(&dir)
        .output()
        .unwrap();
    assert!(!out.status.success());
    assert!(!String::from_utf8_lossy(&out.stderr).contains("panicked"));
}
