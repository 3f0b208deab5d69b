use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kgscreen"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn column(csv: &str, name: &str) -> Vec<String> {
    let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
    let i = header.iter().position(|h| *h == name).unwrap();
    rows(csv).into_iter().map(|r| r[i].clone()).collect()
}

fn sign_changes(values: &[f64]) -> usize {
    let nonzero: Vec<f64> = values.iter().copied().filter(|v| *v != 0.0).collect();
    nonzero.windows(2).filter(|w| (w[0] < 0.0) != (w[1] < 0.0)).count()
}

#[test]
fn table_reproduces_tabulated_rows() {
    let csv = stdout(&["table", "--preset-paper"]);
    assert_eq!(csv.lines().next().unwrap(), "delta,state,n_r,l,q_used,E,residual,exists,diagnostic");
    let rows = rows(&csv);
    assert_eq!(rows.len(), 32);
    let ground = &rows[0];
    assert_eq!(&ground[..2], ["0.05", "1s"]);
    assert_eq!(ground[5], "-0.995440");
    assert_eq!(ground[7], "true");
    let blank = rows.iter().find(|r| r[0] == "0.2" && r[1] == "4d").unwrap();
    assert_eq!(blank[7], "false");
    assert_eq!(blank[5], "");
}

#[test]
fn node_convention_is_flagged_against_the_table() {
    let csv = stdout(&["table", "--preset-paper", "--convention", "nu"]);
    let diag = column(&csv, "diagnostic");
    assert!(diag.iter().any(|d| d.starts_with("mismatch:ref=")));
    let custom = stdout(&["table", "--v0", "0.8"]);
    assert!(column(&custom, "diagnostic").iter().all(|d| d == "no_reference"));
}

#[test]
fn invalid_input_exits_with_usage_status() {
    for args in [
        &["table", "--delta", "0.5"][..],
        &["solve", "--nr", "6"],
        &["potential", "--r-max", "25"],
        &["sweep-delta", "--delta-min", "0"],
        &["table", "--config", "/nonexistent/kgscreen.conf"],
        &["frobnicate"],
        &["table", "--delta", "abc"],
    ] {
        assert_eq!(run(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn ground_state_rises_with_screening() {
    let csv = stdout(&["sweep-delta", "--l", "0", "--nr", "0"]);
    let e: Vec<f64> = column(&csv, "E").iter().map(|s| s.parse().unwrap()).collect();
    assert_eq!(e.len(), 30);
    assert!(e.windows(2).all(|w| w[1] >= w[0]), "{e:?}");
}

#[test]
fn sweep_n_rises_with_n_r() {
    let csv = stdout(&["sweep-n", "--l", "1", "--delta", "0.05"]);
    let e: Vec<f64> = column(&csv, "E").iter().filter(|s| !s.is_empty()).map(|s| s.parse().unwrap()).collect();
    assert!(e.len() >= 2);
    assert!(e.windows(2).all(|w| w[1] > w[0]), "{e:?}");
}

#[test]
fn second_excited_state_has_two_nodes() {
    let csv = stdout(&["wavefunction", "--delta", "0.15", "--nr", "2"]);
    let chi: Vec<f64> = column(&csv, "chi").iter().map(|s| s.parse().unwrap()).collect();
    assert_eq!(chi.len(), 1000);
    assert_eq!(sign_changes(&chi), 2);

    let csv = stdout(&["wavefunction", "--delta", "0.15", "--nr", "2", "--l", "1", "--convention", "nu"]);
    let chi: Vec<f64> = column(&csv, "chi").iter().map(|s| s.parse().unwrap()).collect();
    assert_eq!(sign_changes(&chi), 2);
}

#[test]
fn missing_level_is_a_numerical_failure() {
    let out = run(&["wavefunction", "--delta", "0.15", "--nr", "2", "--convention", "nu"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn potential_approximation_error_is_of_order_a_thousandth() {
    let csv = stdout(&["potential", "--preset-paper", "--delta", "0.05"]);
    let max = column(&csv, "Delta")
        .iter()
        .map(|s| s.parse::<f64>().unwrap().abs())
        .fold(0.0, f64::max);
    assert!((1e-4..1e-2).contains(&max), "{max}");
}

#[test]
fn verify_passes_and_detects_a_norm_fault() {
    let ok = run(&["verify", "--preset-paper"]);
    let text = String::from_utf8(ok.stdout).unwrap();
    assert_eq!(ok.status.code(), Some(0), "{text}");
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 7);

    let bad = run(&["verify", "--preset-paper", "--inject-norm-fault", "1.001"]);
    let text = String::from_utf8(bad.stdout).unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(text.lines().any(|l| l.starts_with("FAIL normalization")));
}

#[test]
fn output_is_deterministic() {
    let args = ["sweep-n", "--delta", "0.1"];
    assert_eq!(stdout(&args), stdout(&args));
    let table = ["table", "--preset-paper"];
    assert_eq!(stdout(&table), stdout(&table));
}

#[test]
fn config_file_is_read_and_flags_win() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# screening\ndelta = 0.10\nnr = 1\nl = 1").unwrap();
    let path = file.path().to_str().unwrap();
    let from_file = stdout(&["solve", "--config", path]);
    let first = &rows(&from_file)[0];
    assert_eq!(&first[..4], ["0.1", "3p", "1", "1"]);
    let overridden = stdout(&["solve", "--config", path, "--delta", "0.2"]);
    assert_eq!(rows(&overridden)[0][0], "0.2");

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "colour = red").unwrap();
    assert_eq!(run(&["solve", "--config", bad.path().to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn out_flag_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pot.csv");
    let out = run(&["potential", "--samples", "5", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(path).unwrap();
    assert_eq!(text.lines().count(), 6);
}
