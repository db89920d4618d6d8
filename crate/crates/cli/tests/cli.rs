use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

const EXAMPLE_ONE: &str = "\
# frequentist power at 0.3
p0 = 0.1
p1 = 0.3
alpha = 0.05
beta = 0.2
k = 1/3
k_f = 3
n_min = 5
n_max = 40
";

const EXAMPLE_TWO_FLOOR: &str = "\
p0 = 0.2
p1 = 0.4
alpha = 0.1
beta = 0.1
k = 1/3
k_f = 3
f = 0.6
n_min = 5
n_max = 60
";

fn config(text: &str) -> NamedTempFile {
    let mut file = NamedTempFile::new().unwrap();
    file.write_all(text.as_bytes()).unwrap();
    file
}

fn run(args: &[&str], cfg: &NamedTempFile) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bf2stage"))
        .args(args)
        .arg("--config")
        .arg(cfg.path())
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn last_row(o: &Output) -> Vec<String> {
    stdout(o)
        .lines()
        .last()
        .unwrap()
        .split_whitespace()
        .map(str::to_owned)
        .collect()
}

#[test]
fn calibrate_example_one() {
    let out = run(&["calibrate"], &config(EXAMPLE_ONE));
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(last_row(&out), ["10", "29", "0.0471", "0.8051", "15.01", "0.7361"]);
}

#[test]
fn calibrate_example_two_with_floor() {
    let out = run(&["calibrate"], &config(EXAMPLE_TWO_FLOOR));
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert_eq!(last_row(&out), ["30", "36", "0.0886", "0.9091", "32.36", "0.6070"]);
}

#[test]
fn calibrate_csv() {
    let out = run(&["calibrate", "--format", "csv"], &config(EXAMPLE_ONE));
    assert_eq!(
        stdout(&out),
        "n1,n2,typeI_adj,power_adj,en_h0,pce\n10,29,0.047086,0.805063,15.014120,0.736099\n"
    );
}

#[test]
fn calibrate_iterative_is_window_stable() {
    let out = run(&["calibrate", "--iterative"], &config(EXAMPLE_ONE));
    assert_eq!(out.status.code(), Some(0));
    let row = last_row(&out);
    let n2: usize = row[1].parse().unwrap();
    assert!(n2 <= 40);
}

#[test]
fn zero_alpha_is_a_config_error() {
    let out = run(&["calibrate"], &config(&EXAMPLE_ONE.replace("alpha = 0.05", "alpha = 0")));
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("`alpha`") && err.contains("line 4"), "{err}");
}

#[test]
fn unreachable_futility_is_infeasible() {
    let text = EXAMPLE_ONE.replace("k_f = 3", "k_f = 1e12");
    let out = run(&["calibrate"], &config(&text));
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("cannot be calibrated for that choice"));
}

#[test]
fn missing_config_file() {
    let out = Command::new(env!("CARGO_BIN_EXE_bf2stage"))
        .args(["calibrate", "--config", "/nonexistent/bf2stage.conf"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

fn oc_value(text: &str, name: &str) -> (String, String) {
    let line = text.lines().find(|l| l.starts_with(name)).unwrap();
    let cols: Vec<&str> = line.split_whitespace().collect();
    (cols[1].to_owned(), cols[2].to_owned())
}

#[test]
fn oc_reproduces_the_optimal_row() {
    let out = run(&["oc", "--n1", "10", "--n2", "29"], &config(EXAMPLE_ONE));
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(oc_value(&text, "adjusted"), ("0.0471".into(), "0.8051".into()));
    assert_eq!(oc_value(&text, "expected_n").0, "15.01");
    assert_eq!(oc_value(&text, "pce_p0").0, "0.7361");
}

#[test]
fn oc_without_futility_branch() {
    let text = EXAMPLE_ONE.replace("k_f = 3", "k_f = 1e12");
    let out = run(&["oc", "--n1", "10", "--n2", "29"], &config(&text));
    let text = stdout(&out);
    assert_eq!(oc_value(&text, "interim_futility"), ("0.0000".into(), "0.0000".into()));
    assert_eq!(oc_value(&text, "adjusted"), oc_value(&text, "unadjusted"));
    assert!(text.contains("adjusted equals unadjusted"));
}

#[test]
fn oc_toy_design_by_hand() {
    // p0 = 1/2: stop on y1 = 0 of 2 and reject on at least 3 of 4.
    // Under the null: P(stop) = 1/4, P(S >= 3) = 5/16, nothing erased.
    // Under a flat prior on [1/2, 1]: P(y1 = 0) = 2 ∫ (1-θ)^2 = 1/12.
    let text = "p0 = 0.5\na_d = 1\nb_d = 1\nalpha = 0.4\nbeta = 0.4\nk = 1/3\nk_f = 3\nn_min = 1\nn_max = 4\n";
    let out = run(&["oc", "--n1", "2", "--n2", "4", "--format", "csv"], &config(text));
    let csv = stdout(&out);
    let row = |name: &str| -> Vec<f64> {
        let line = csv.lines().find(|l| l.starts_with(&format!("{name},"))).unwrap();
        line.split(',').skip(1).map(|v| v.parse().unwrap()).collect()
    };
    assert_eq!(row("adjusted")[0], 0.3125);
    assert_eq!(row("futility_erased"), [0.0, 0.0]);
    assert_eq!(row("interim_futility")[0], 0.25);
    assert_eq!(format!("{:.6}", row("interim_futility")[1]), format!("{:.6}", 1.0 / 12.0));
    assert_eq!(row("expected_n")[0], 3.5);
}

#[test]
fn oc_rejects_bad_sizes() {
    for (n1, n2) in [("10", "10"), ("10", "41"), ("0", "5")] {
        let out = run(&["oc", "--n1", n1, "--n2", n2], &config(EXAMPLE_ONE));
        assert_eq!(out.status.code(), Some(2));
    }
}

fn scan_csv(text: &str, n2: &str) -> String {
    let out = run(&["scan", "--n2", n2], &config(text));
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    stdout(&out)
}

#[test]
fn scan_rows_and_format() {
    let csv = scan_csv(&format!("{EXAMPLE_ONE}window = 0\n"), "29");
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n1,power_adj,typeI_adj,pce,en_h0,feasible"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 24);
    assert!(rows.contains(&"10,0.805063,0.047086,0.736099,15.014120,true"));
    assert!(csv.ends_with('\n'));
}

#[test]
fn scan_window_changes_only_the_verdicts() {
    let strip = |csv: &str| -> Vec<String> {
        csv.lines()
            .map(|l| l.rsplit_once(',').unwrap().0.to_owned())
            .collect()
    };
    let loose = scan_csv(&format!("{EXAMPLE_ONE}window = 0\n"), "29");
    let strict = scan_csv(&format!("{EXAMPLE_ONE}window = 10\n"), "29");
    assert_eq!(strip(&loose), strip(&strict));
    assert_ne!(loose, strict);
}

#[test]
fn scan_empty_range_prints_header() {
    assert_eq!(scan_csv(EXAMPLE_ONE, "5"), "n1,power_adj,typeI_adj,pce,en_h0,feasible\n");
}

#[test]
fn scan_is_byte_stable() {
    let cfg = config(EXAMPLE_ONE);
    let a = run(&["scan", "--n2", "33"], &cfg);
    let b = run(&["scan", "--n2", "33"], &cfg);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn printed_values_reproduce_the_verdicts() {
    let csv = scan_csv(&format!("{EXAMPLE_TWO_FLOOR}window = 0\n"), "40");
    for line in csv.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let power: f64 = cols[1].parse().unwrap();
        let type_i: f64 = cols[2].parse().unwrap();
        let pce: f64 = cols[3].parse().unwrap();
        let verdict = type_i <= 0.1 && power >= 0.9 && pce > 0.6;
        assert_eq!(verdict.to_string(), cols[5], "{line}");
    }
}

#[test]
fn simon_rows() {
    let out = run(&["simon"], &config(EXAMPLE_ONE));
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(rows[0], ["minimax", "1", "15", "5", "25", "0.0328", "0.8017", "19.51", "0.5490"]);
    assert_eq!(rows[1], ["optimal", "1", "10", "5", "29", "0.0471", "0.8051", "15.01", "0.7361"]);

    let out = run(&["simon"], &config(EXAMPLE_TWO_FLOOR));
    let text = stdout(&out);
    let rows: Vec<Vec<&str>> = text.lines().skip(1).map(|l| l.split_whitespace().collect()).collect();
    assert_eq!(&rows[0][2..], ["19", "10", "36", "0.0861", "0.9024", "28.26", "0.4551"]);
    assert_eq!(&rows[1][2..], ["17", "10", "37", "0.0948", "0.9033", "26.02", "0.5489"]);
}

#[test]
fn simon_needs_a_point_alternative() {
    let text = EXAMPLE_ONE.replace("p1 = 0.3", "a_d = 1\nb_d = 1");
    let out = run(&["simon"], &config(&text));
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("Simon requires a point alternative"));
}

#[test]
fn simon_rejects_alternative_below_null() {
    let out = run(&["simon"], &config(&EXAMPLE_ONE.replace("p1 = 0.3", "p1 = 0.05")));
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("`p1`"));
}
