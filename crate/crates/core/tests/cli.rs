use std::process::{Command, Output};

fn bloic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bloic")).args(args).output().expect("binary runs")
}

fn header(csv: &str) -> Vec<String> {
    csv.lines().find(|l| !l.starts_with('#')).expect("header row").split(',').map(String::from).collect()
}

fn rows(csv: &str) -> Vec<Vec<f64>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(|x| x.parse().unwrap()).collect())
        .collect()
}

#[test]
fn fig2_header_lists_each_curve_once() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fig2.csv");
    let out = bloic(&["figure", "fig2", "--out", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(&path).unwrap();
    let h = header(&csv);
    let expected = ["snr_dB", "ExpS2", "ExpS2IFS", "UnifPLIFS", "GeomS2IFS", "UB1", "UB2", "MCOICAsymptote"];
    assert_eq!(h, expected);
    for name in &expected[1..] {
        assert_eq!(csv.lines().filter(|l| l.starts_with(&format!("# column {name}:"))).count(), 1, "{name}");
    }
    assert_eq!(rows(&csv).len(), 121);
}

#[test]
fn identical_runs_give_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let paths: Vec<_> = (0..2).map(|k| dir.path().join(format!("run{k}.csv"))).collect();
    for p in &paths {
        let out = bloic(&["figure", "fig8", "--snr-step-db", "1", "--seed", "5", "--out", p.to_str().unwrap()]);
        assert!(out.status.success());
    }
    assert_eq!(std::fs::read(&paths[0]).unwrap(), std::fs::read(&paths[1]).unwrap());
}

#[test]
fn fig7_ifs_columns_agree_at_low_snr() {
    let out = bloic(&["figure", "fig7", "--snr-start-db=-8", "--snr-stop-db=-2"]);
    assert!(out.status.success());
    let csv = String::from_utf8(out.stdout).unwrap();
    let h = header(&csv);
    let (a, b) = (h.iter().position(|x| x == "TES2IFS").unwrap(), h.iter().position(|x| x == "TEPLIFS").unwrap());
    for r in rows(&csv) {
        assert!((r[a] - r[b]).abs() <= 1e-3, "{r:?}");
    }
}

#[test]
fn gap_command_reports_limits() {
    let out = bloic(&["gap"]);
    let csv = String::from_utf8(out.stdout).unwrap();
    let r = &rows(&csv)[0];
    assert_eq!(r[0], 60.0);
    assert!((r[1] - 2.885).abs() < 0.01 && (r[2] - 4.343).abs() < 0.01);
}

#[test]
fn errors_exit_nonzero() {
    let out = bloic(&["figure", "fig10"]);
    assert!(!out.status.success());
    let out = bloic(&["curve", "ExpS2", "--snr-step-db", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("step"));
}

#[test]
fn validate_pulses_suite_passes() {
    let out = bloic(&["validate", "--suite", "pulses"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().all(|l| l.starts_with("PASS")));
    assert!(text.lines().count() >= 6);
}

#[test]
fn single_bound_and_pulse_commands() {
    let out = bloic(&["bound", "ExpS2", "--snr-db", "10"]);
    let csv = String::from_utf8(out.stdout).unwrap();
    let v: f64 = csv.lines().nth(1).unwrap().rsplit(',').next().unwrap().parse().unwrap();
    assert!((v - 2.777153120281264).abs() < 1e-8);
    let out = bloic(&["pulse", "--pulse", "pl", "--beta", "0.3"]);
    assert!(out.status.success());
    assert!(String::from_utf8(out.stdout).unwrap().contains("excursion,"));
}
