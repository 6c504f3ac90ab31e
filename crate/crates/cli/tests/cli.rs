use std::f64::consts::PI;
use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn latcover(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_latcover"));
    cmd.args(args).env_remove("LATCOVER_THREADS");
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn ok(args: &[&str]) -> Output {
    let out = latcover(args, &[]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn read(dir: &Path, file: &str) -> Vec<u8> {
    fs::read(dir.join(file)).unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

#[test]
fn identical_configs_give_identical_csvs() {
    let tmp = TempDir::new().unwrap();
    for run in ["a", "b"] {
        ok(&[
            "cover-scaling",
            "--N",
            "8,12",
            "--trials",
            "12",
            "--seed",
            "7",
            "--out",
            &path(&tmp, run),
        ]);
        ok(&[
            "cluster-census",
            "--n",
            "3.5",
            "--trials",
            "6",
            "--seed",
            "7",
            "--out",
            &path(&tmp, &format!("k{run}")),
        ]);
    }
    let (a, b) = (tmp.path().join("a"), tmp.path().join("b"));
    for file in ["cover_scaling.csv", "cover_trials.csv"] {
        assert_eq!(read(&a, file), read(&b, file), "{file}");
    }
    let (ka, kb) = (tmp.path().join("ka"), tmp.path().join("kb"));
    for file in ["cluster_census.csv", "clusters.csv"] {
        assert_eq!(read(&ka, file), read(&kb, file), "{file}");
    }
}

#[test]
fn seeds_change_the_output() {
    let tmp = TempDir::new().unwrap();
    ok(&[
        "cover-scaling",
        "--N",
        "8",
        "--trials",
        "5",
        "--seed",
        "1",
        "--out",
        &path(&tmp, "a"),
    ]);
    ok(&[
        "cover-scaling",
        "--N",
        "8",
        "--trials",
        "5",
        "--seed",
        "2",
        "--out",
        &path(&tmp, "b"),
    ]);
    assert_ne!(
        read(&tmp.path().join("a"), "cover_trials.csv"),
        read(&tmp.path().join("b"), "cover_trials.csv")
    );
}

#[test]
fn replay_reproduces_outputs() {
    let tmp = TempDir::new().unwrap();
    ok(&[
        "iso-check",
        "--N",
        "3",
        "--t",
        "0.5,2",
        "--trials",
        "300",
        "--seed",
        "11",
        "--out",
        &path(&tmp, "a"),
    ]);
    let manifest = path(&tmp, "a/manifest.json");
    ok(&["replay", &manifest, "--out", &path(&tmp, "b")]);
    assert_eq!(
        read(&tmp.path().join("a"), "iso_check.csv"),
        read(&tmp.path().join("b"), "iso_check.csv")
    );
    let text = fs::read_to_string(&manifest).unwrap();
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(json["config"]["command"], "iso-check");
    assert_eq!(json["config"]["trials"], 300);
    assert_eq!(json["config"]["gamma"], 0.2);
    assert!(json["wall_time_seconds"].as_f64().unwrap() >= 0.0);
    assert_eq!(json["outputs"][0], "iso_check.csv");
}

#[test]
fn thread_count_does_not_change_results() {
    let tmp = TempDir::new().unwrap();
    for (dir, threads) in [("one", "1"), ("four", "4")] {
        let out = latcover(
            &[
                "cover-scaling",
                "--N",
                "10",
                "--trials",
                "16",
                "--out",
                &path(&tmp, dir),
            ],
            &[("LATCOVER_THREADS", threads)],
        );
        assert!(out.status.success());
    }
    assert_eq!(
        read(&tmp.path().join("one"), "cover_trials.csv"),
        read(&tmp.path().join("four"), "cover_trials.csv")
    );
}

#[test]
fn csv_headers_are_fixed() {
    let tmp = TempDir::new().unwrap();
    ok(&["green-table", "--N", "3", "--out", &path(&tmp, "g")]);
    ok(&[
        "excursion-moments",
        "--N",
        "3",
        "--trials",
        "100",
        "--out",
        &path(&tmp, "e"),
    ]);
    let first = |dir: &str, file: &str| {
        String::from_utf8(read(&tmp.path().join(dir), file))
            .unwrap()
            .lines()
            .next()
            .unwrap()
            .to_string()
    };
    assert_eq!(
        first("g", "green_table.csv"),
        "N,x,y,bulk,green_diag,dist_to_complement,gap"
    );
    assert_eq!(
        first("e", "excursion_moments.csv"),
        "N,sites,deg_boundary,trials,mean_theta,se,predicted_mean,z"
    );
}

#[test]
fn green_table_lists_every_site() {
    let tmp = TempDir::new().unwrap();
    ok(&["green-table", "--N", "3", "--out", &path(&tmp, "g")]);
    let text = String::from_utf8(read(&tmp.path().join("g"), "green_table.csv")).unwrap();
    assert_eq!(text.lines().count(), 1 + 9);
}

#[test]
fn excursion_moments_on_the_block() {
    let tmp = TempDir::new().unwrap();
    ok(&[
        "excursion-moments",
        "--N",
        "3",
        "--trials",
        "200000",
        "--seed",
        "5",
        "--out",
        &path(&tmp, "e"),
    ]);
    let text = String::from_utf8(read(&tmp.path().join("e"), "excursion_moments.csv")).unwrap();
    let row: Vec<&str> = text.lines().nth(1).unwrap().split(',').collect();
    assert_eq!(&row[1..3], ["9", "12"]);
    let predicted: f64 = row[6].parse().unwrap();
    assert!((predicted - 3.0 * PI / 2.0).abs() < 1e-12);
    let z: f64 = row[7].parse().unwrap();
    assert!(z.abs() <= 3.0, "z = {z}");
}

#[test]
fn polygon_shapes_are_read_from_files() {
    let tmp = TempDir::new().unwrap();
    let poly = tmp.path().join("tri.txt");
    fs::write(&poly, "# triangle\n-1 -1\n2 -1\n-1 2\n").unwrap();
    let shape = format!("poly:{}", poly.display());
    ok(&[
        "green-table",
        "--shape",
        &shape,
        "--N",
        "6",
        "--out",
        &path(&tmp, "p"),
    ]);
    let bad = tmp.path().join("bad.txt");
    fs::write(&bad, "0 0\n1\n").unwrap();
    let out = latcover(
        &["green-table", "--shape", &format!("poly:{}", bad.display())],
        &[],
    );
    assert_eq!(code(&out), 4);
}

#[test]
fn errors_have_distinct_exit_codes() {
    let tmp = TempDir::new().unwrap();
    let out_dir = path(&tmp, "x");
    let cases: [(&[&str], i32, &str); 8] = [
        (&["cover-time"], 3, "unknown command"),
        (&["green-table", "--shape", "hexagon"], 4, "invalid shape"),
        (
            &["green-table", "--shape", "poly:/nonexistent/shape.txt"],
            4,
            "invalid shape",
        ),
        (
            &["cover-scaling", "--gamma", "0.4", "--eta0", "0.25"],
            5,
            "gamma",
        ),
        (&["cover-scaling", "--N", "1"], 5, "N must exceed 1"),
        (&["cover-scaling", "--n", "3", "--N", "20"], 5, "either"),
        (&["replay", "/nonexistent/manifest.json"], 6, "manifest"),
        (&["cover-scaling", "--trials", "many"], 2, "invalid value"),
    ];
    for (args, expected, message) in cases {
        let mut args = args.to_vec();
        args.extend(["--out", &out_dir]);
        let out = latcover(&args, &[]);
        let stderr = String::from_utf8_lossy(&out.stderr);
        assert_eq!(code(&out), expected, "{args:?}: {stderr}");
        assert!(stderr.contains(message), "{args:?}: {stderr}");
    }
    let out = latcover(
        &["green-table", "--out", &out_dir],
        &[("LATCOVER_THREADS", "zero")],
    );
    assert_eq!(code(&out), 5);
}

#[test]
fn validation_errors_are_aggregated() {
    let out = latcover(
        &["iso-check", "--N", "0.5", "--trials", "1", "--rate", "-2"],
        &[],
    );
    assert_eq!(code(&out), 5);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("N must exceed 1"));
    assert!(stderr.contains("at least 2 trials"));
    assert!(stderr.contains("edge rate"));
}
