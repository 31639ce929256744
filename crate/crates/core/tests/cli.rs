use std::f64::consts::PI;
use std::process::{Command, Output};

fn lde(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lde")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().skip(1).map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

#[test]
fn harmonic_limit_prints_two_pi() {
    let o = lde(&["duffing", "--mu", "0", "--amplitude", "1", "--order", "4"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("order,lambda,partial_sum,error_vs_exact\n"));
    let r = rows(&text);
    assert_eq!(r.len(), 5);
    for row in r {
        assert_eq!(row[2].parse::<f64>().unwrap(), 2.0 * PI);
    }
}

#[test]
fn seventeen_digits_round_trip() {
    let o = lde(&["duffing", "--order", "6"]);
    for row in rows(&stdout(&o)) {
        let x: f64 = row[2].parse().unwrap();
        assert_eq!(format!("{x:.16e}"), row[2]);
    }
}

#[test]
fn output_is_deterministic() {
    let args = ["zeta", "--tau", "50", "--figure7"];
    let a = lde(&args);
    let b = lde(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn digits_option_controls_precision() {
    let o = lde(&["zeta", "--s", "3", "--terms", "5", "--digits", "5"]);
    let r = rows(&stdout(&o));
    assert_eq!(r[0][4], "1.2017e0");
}

#[test]
fn invalid_input_exits_with_usage_code() {
    for args in [
        &["duffing", "--mu=-1"][..],
        &["gr", "--gm", "1", "deflect", "--r0", "2"],
        &["zeta", "--lambda", "abc"],
        &["no-such-command"],
    ] {
        let o = lde(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(o.stdout.is_empty());
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn out_option_writes_file() {
    let dir = std::env::temp_dir().join(format!("lde-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("pendulum.csv");
    let o = lde(&["--out", path.to_str().unwrap(), "pendulum", "--theta", "1"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().count() >= 2);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn mercury_precession_default() {
    let o = lde(&["gr", "precess"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let header: Vec<&str> = text.lines().next().unwrap().split(',').collect();
    let r = rows(&text);
    let col = header.iter().position(|h| *h == "exact").expect("exact column");
    let exact: f64 = r[0][col].parse().unwrap();
    assert!((exact / 4.927e-7 - 1.0).abs() < 1e-3);
}

#[test]
fn fast_selftest_passes() {
    let o = lde(&["selftest", "--fast"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().count() >= 5);
    assert!(text.lines().all(|l| l.starts_with("PASS")));
}
