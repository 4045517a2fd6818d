use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn hopspan(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hopspan"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn experiment_sizes_grow_with_pairs() {
    let dir = tempfile::tempdir().unwrap();
    let out = hopspan(
        dir.path(),
        &["experiment", "--kind", "directed-preserver", "--n", "128", "--p", "4,16,64", "--no-timing", "--out", "a.csv"],
    );
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let csv = fs::read_to_string(dir.path().join("a.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "kind,n,p,params,seed,size,claimed_stretch,verified,ms");
    let rows = rows(&csv);
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r[7] == "PASS" && r[6] == "1"));
    let sizes: Vec<usize> = rows.iter().map(|r| r[5].parse().unwrap()).collect();
    assert!(sizes.windows(2).all(|w| w[0] <= w[1]), "{sizes:?}");
}

#[test]
fn experiment_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["experiment", "--kind", "sourcewise", "--n", "48,64", "--p", "4", "--seeds", "2", "--no-timing"];
    let a = hopspan(dir.path(), &args);
    let b = hopspan(dir.path(), &[&args[..], &["--threads", "1"]].concat());
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(rows(&String::from_utf8(a.stdout).unwrap()).len(), 4);
}

#[test]
fn empty_grid_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let out = hopspan(dir.path(), &["experiment", "--kind", "hopset"]);
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("empty grid"));
    let out = hopspan(dir.path(), &["experiment", "--kind", "directed-preserver", "--n", "32"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn plot_files_have_two_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out = hopspan(
        dir.path(),
        &["experiment", "--kind", "hopset", "--n", "32,64", "--beta", "8", "--plot-dir", "plots", "--no-timing"],
    );
    assert_eq!(code(&out), 0);
    let files: Vec<_> = fs::read_dir(dir.path().join("plots")).unwrap().collect();
    assert_eq!(files.len(), 1);
    let text = fs::read_to_string(files[0].as_ref().unwrap().path()).unwrap();
    let data: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data.len(), 2);
    assert!(data.iter().all(|l| l.split_whitespace().count() == 2));
}

#[test]
fn config_file_fills_in_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("cfg.json"), r#"{"kind": "hopset", "n": [32], "beta": [4], "no-timing": true}"#).unwrap();
    let out = hopspan(dir.path(), &["experiment", "--config", "cfg.json", "--beta", "8"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let rows = rows(&String::from_utf8(out.stdout).unwrap());
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0][3], "beta=8");
    assert_eq!(rows[0][8], "0");
    fs::write(dir.path().join("bad.json"), r#"{"kidn": "hopset"}"#).unwrap();
    let out = hopspan(dir.path(), &["experiment", "--config", "bad.json"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn build_then_verify_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&hopspan(d, &["gen", "--kind", "dag", "--n", "60", "--p", "0.08", "--max-weight", "5", "--out", "g.txt"])), 0);
    let builds: [&[&str]; 4] = [
        &["hopset", "--graph", "g.txt", "--beta", "9", "--out", "h.txt", "--verify"],
        &["shortcut", "--graph", "g.txt", "--d", "3", "--out", "s.txt", "--verify"],
        &["missing-spanner", "--graph", "g.txt", "--betas", "20,6", "--out", "m.json", "--verify"],
        &["preserver", "--graph", "g.txt", "--random-pairs", "10", "--out", "p.txt", "--verify"],
    ];
    for args in builds {
        let out = hopspan(d, args);
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    for f in ["h.txt", "s.txt", "m.json", "p.txt"] {
        let out = hopspan(d, &["verify", "--graph", "g.txt", "--structure", f, "--json"]);
        assert_eq!(code(&out), 0, "{f}");
        let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(report["pass"], true);
    }
}

#[test]
fn tampered_hopset_fails_verification() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&hopspan(d, &["gen", "--kind", "path", "--n", "10", "--directed", "--out", "g.txt"])), 0);
    let out = hopspan(d, &["hopset", "--graph", "g.txt", "--method", "closure", "--beta", "1", "--out", "h.txt"]);
    assert_eq!(code(&out), 0);
    let text = fs::read_to_string(d.join("h.txt")).unwrap();
    let cut: String = text.lines().filter(|l| !l.starts_with("0 9 ")).map(|l| format!("{l}\n")).collect();
    assert_ne!(cut, text);
    fs::write(d.join("h.txt"), cut).unwrap();
    let out = hopspan(d, &["verify", "--graph", "g.txt", "--structure", "h.txt"]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn undirected_builders_verify() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(code(&hopspan(d, &["gen", "--n", "48", "--p", "0.12", "--seed", "4", "--out", "u.txt"])), 0);
    let builds: [&[&str]; 5] = [
        &["spanner", "--graph", "u.txt", "--verify"],
        &["spanner", "--graph", "u.txt", "--variant", "emulator", "--verify"],
        &["spanner", "--graph", "u.txt", "--variant", "weighted", "--verify"],
        &["sourcewise", "--graph", "u.txt", "--sources", "0,5,9", "--verify"],
        &["slack", "--graph", "u.txt", "--eps", "1/4", "--verify"],
    ];
    for args in builds {
        let out = hopspan(d, args);
        assert_eq!(code(&out), 0, "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
}

#[test]
fn usage_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(code(&hopspan(dir.path(), &["hopset", "--beta", "3"])), 2);
    assert_eq!(code(&hopspan(dir.path(), &["hopset", "--graph", "missing.txt", "--beta", "3"])), 2);
    assert_eq!(code(&hopspan(dir.path(), &["no-such-command"])), 2);
    assert_eq!(code(&hopspan(dir.path(), &["experiment", "--kind", "hopset", "--n", "16", "--a", "3"])), 2);
}
