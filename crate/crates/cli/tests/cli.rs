use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn rainbow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rainbow"))
        .args(args)
        .env_remove("RAINBOW_WORKERS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn gen_then_validate_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("g.txt");
    let out = rainbow(&[
        "gen",
        "--family",
        "random",
        "--n",
        "16",
        "--seed",
        "4",
        "-o",
        path_str(&file),
    ]);
    assert!(out.status.success());
    let text = fs::read_to_string(&file).unwrap();
    assert!(text.starts_with("16 "));

    let out = rainbow(&["validate", path_str(&file)]);
    assert!(out.status.success(), "{}", stdout(&out));
    let report = stdout(&out);
    assert!(report.contains("OK edge_minimal"));
    assert!(report.contains("OK rainbow_length"));
    assert!(!report.contains("BREACH"));
}

#[test]
fn gen_is_deterministic() {
    let a = rainbow(&["gen", "--family", "random", "--n", "12", "--seed", "9"]);
    let b = rainbow(&["gen", "--family", "random", "--n", "12", "--seed", "9"]);
    assert_eq!(a.stdout, b.stdout);
    let c = rainbow(&["gen", "--family", "random", "--n", "12", "--seed", "10"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn fm_example_has_no_proper_xy_path() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("fm.txt");
    fs::write(
        &file,
        stdout(&rainbow(&["gen", "--family", "fm", "--n", "9"])),
    )
    .unwrap();
    let out = rainbow(&["proper", path_str(&file), "7", "8"]);
    assert_eq!(stdout(&out).trim(), "NONE");
    let out = rainbow(&["connect", "--proper", path_str(&file)]);
    assert!(stdout(&out).contains("properly_connected false"));
    assert!(stdout(&out).contains("missing_pair 7-8"));
}

#[test]
fn path_prints_certificates() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("p.txt");
    fs::write(&file, "4 4\n0 1 0\n1 2 1\n2 3 2\n0 3 1\n").unwrap();
    let out = rainbow(&["path", path_str(&file), "0", "2"]);
    assert_eq!(stdout(&out).trim(), "0 -0-> 1 -1-> 2");
    let out = rainbow(&["path", path_str(&file), "0", "2", "--forbid-colors", "0"]);
    assert_eq!(stdout(&out).trim(), "0 -1-> 3 -2-> 2");
    let out = rainbow(&[
        "path",
        path_str(&file),
        "0",
        "2",
        "--forbid-vertices",
        "1,3",
    ]);
    assert_eq!(stdout(&out).trim(), "NONE");
    let out = rainbow(&[
        "path",
        path_str(&file),
        "0",
        "2",
        "--engine",
        "cc",
        "--seed",
        "1",
    ]);
    assert!(stdout(&out).starts_with("0 -"));
}

#[test]
fn reduce_reports_removed_edges() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("tri.txt");
    let output = dir.path().join("out.txt");
    fs::write(&input, "4 4\n0 1 0\n1 2 0\n0 2 0\n2 3 1\n").unwrap();
    let out = rainbow(&[
        "reduce",
        path_str(&input),
        "--mode",
        "structural",
        "--threshold",
        "1",
        "-o",
        path_str(&output),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "REMOVED 0 1 0\n");
    assert_eq!(
        fs::read_to_string(&output).unwrap(),
        "4 3\n0 2 0\n1 2 0\n2 3 1\n"
    );
}

#[test]
fn aux_emits_digraphs() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("mu.txt");
    fs::write(
        &file,
        stdout(&rainbow(&["gen", "--family", "matching-union", "--n", "6"])),
    )
    .unwrap();
    let dg = stdout(&rainbow(&["aux", path_str(&file), "--emit", "dg"]));
    assert!(dg.starts_with("6 24\n"));
    let gstar = stdout(&rainbow(&["aux", path_str(&file), "--emit", "gstar"]));
    assert!(gstar.starts_with("6 12\n"));
    let dstar = stdout(&rainbow(&["aux", path_str(&file), "--emit", "dstar"]));
    assert_eq!(dstar, "6 0\n");
    let report = stdout(&rainbow(&["aux", path_str(&file), "--emit", "extremal"]));
    assert!(report.contains("type2 false"));
}

#[test]
fn rst_and_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("mu.txt");
    fs::write(
        &file,
        stdout(&rainbow(&["gen", "--family", "matching-union", "--n", "6"])),
    )
    .unwrap();
    let out = stdout(&rainbow(&["rst", path_str(&file), "--oracle"]));
    assert!(out.starts_with("NONE\n"));
    assert!(out.contains("criterion fails"));
}

#[test]
fn kconnect_on_two_cliques() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("tc.txt");
    fs::write(
        &file,
        stdout(&rainbow(&[
            "gen",
            "--family",
            "two-clique",
            "--n",
            "8",
            "--k",
            "2",
        ])),
    )
    .unwrap();
    let out = rainbow(&[
        "kconnect",
        path_str(&file),
        "0",
        "5",
        "--k",
        "2",
        "--exhaustive",
    ]);
    assert_eq!(stdout(&out).trim(), "NONE");
    let out = rainbow(&["kconnect", path_str(&file), "0", "1", "--k", "2"]);
    assert_eq!(stdout(&out).lines().count(), 2);
}

#[test]
fn experiment_writes_report_and_instances() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().join("exp");
    let args = [
        "experiment",
        "--n-list",
        "20",
        "--samples",
        "1",
        "--seed",
        "7",
        "--k-list",
        "2",
        "--out",
        path_str(&out_dir),
    ];
    let first = rainbow(&args);
    assert!(first.status.success());
    let csv = stdout(&first);
    assert!(csv.starts_with("# rainbow-experiment-report v1\n"));
    assert_eq!(csv.lines().count(), 3);
    assert!(csv.lines().nth(2).unwrap().contains(",OK,"));
    assert_eq!(fs::read_to_string(out_dir.join("report.csv")).unwrap(), csv);
    assert!(out_dir.join("timings.csv").exists());
    let instance = out_dir.join("instances/random_colored_n20_s0.txt");
    assert!(instance.exists());

    let second = rainbow(&args);
    assert_eq!(first.stdout, second.stdout);

    let out = rainbow(&["validate", path_str(&instance)]);
    assert!(out.status.success());
}

#[test]
fn worker_count_does_not_change_output() {
    let args = [
        "experiment",
        "--n-list",
        "10,12",
        "--samples",
        "2",
        "--seed",
        "3",
    ];
    let one = Command::new(env!("CARGO_BIN_EXE_rainbow"))
        .args(args)
        .env("RAINBOW_WORKERS", "1")
        .output()
        .unwrap();
    let many = Command::new(env!("CARGO_BIN_EXE_rainbow"))
        .args(args)
        .env("RAINBOW_WORKERS", "4")
        .output()
        .unwrap();
    assert!(one.status.success());
    assert_eq!(one.stdout, many.stdout);
}

#[test]
fn parse_errors_name_the_line() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.txt");
    fs::write(&file, "3 2\n0 1 0\n1 0 4\n").unwrap();
    let out = rainbow(&["validate", path_str(&file)]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("line 3"), "{err}");
    assert!(err.contains("duplicate"), "{err}");
}

#[test]
fn validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("c4.txt");
    fs::write(&file, "4 4\n0 1 0\n1 2 1\n2 3 2\n0 3 3\n").unwrap();
    // a threshold the input does not meet is an input error
    let out = rainbow(&["validate", path_str(&file), "--threshold", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(rainbow(&["validate", path_str(&file)]).status.success());
    // a single color-coding trial can miss a path; the miss is a reported breach
    let breach = (0..100).map(|seed| seed.to_string()).find_map(|seed| {
        let out = rainbow(&[
            "validate",
            path_str(&file),
            "--engine",
            "cc",
            "--trials",
            "1",
            "--seed",
            &seed,
        ]);
        (out.status.code() == Some(1)).then(|| stdout(&out))
    });
    let report = breach.expect("some seed misses");
    assert!(report.contains("BREACH rainbow_length"), "{report}");
}
