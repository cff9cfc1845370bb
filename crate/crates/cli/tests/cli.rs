use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use satotate_core::curve::catalog;
use satotate_core::primes::primes_up_to;
use satotate_core::{build_angle_series, load_cache, AngleSource};

const CURVE_11A1: &str = "0,-1,1,-10,-20";

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_satotate"));
    c.env_remove("SATOTATE_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn")
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn cache_11a1(dir: &Path, xmax: &str) -> PathBuf {
    let path = dir.join(format!("11a1_{xmax}.stan"));
    let out = run(&["angles", "--curve", CURVE_11A1, "--conductor", "11", "--xmax", xmax, "--out", s(&path)]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path
}

/// Data rows of a CSV output, skipping the version comment and header.
fn csv_rows(out: &Output) -> Vec<Vec<String>> {
    let text = String::from_utf8(out.stdout.clone()).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# satotate "));
    lines.skip(1).map(|l| l.split(',').map(str::to_string).collect()).collect()
}

#[test]
fn angles_counts_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let big = cache_11a1(dir.path(), "1000000");
    assert_eq!(load_cache(&big).unwrap().len(), 78_497);
    let two = cache_11a1(dir.path(), "2");
    let series = load_cache(&two).unwrap();
    assert_eq!(series.len(), 1);
    assert_eq!(series.points[0].p, 2);

    let no_conductor = run(&["angles", "--curve", CURVE_11A1, "--xmax", "10", "--out", s(&dir.path().join("x"))]);
    assert_eq!(no_conductor.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&no_conductor.stderr).contains("conductor"));

    let singular = run(&["angles", "--curve", "0,0,0,0,0", "--conductor", "1", "--xmax", "10", "--out", "x"]);
    assert_eq!(singular.status.code(), Some(2));

    let unwritable = run(&["angles", "--curve", CURVE_11A1, "--conductor", "11", "--xmax", "10", "--out", "/nonexistent/dir/a.stan"]);
    assert_eq!(unwritable.status.code(), Some(3));
}

#[test]
fn verify_rows_match_recount() {
    let dir = tempfile::tempdir().unwrap();
    let cache = cache_11a1(dir.path(), "20000");
    let out = run(&["verify", "--cache", s(&cache), "--interval", "half", "--x", "10000"]);
    assert!(out.status.success());
    let rows = csv_rows(&out);
    assert_eq!(rows.len(), 1);
    let series = load_cache(&cache).unwrap();
    let recount = series.up_to(10_000).unwrap().iter().filter(|pt| pt.theta <= std::f64::consts::FRAC_PI_2).count();
    assert_eq!(rows[0][0], "10000");
    assert_eq!(rows[0][1], "1229");
    assert_eq!(rows[0][2], recount.to_string());
    let expected: f64 = rows[0][3].parse().unwrap();
    let err: f64 = rows[0][4].parse().unwrap();
    assert!((err - (recount as f64 - expected).abs()).abs() < 1e-9);

    // Full interval: the error is exactly the number of bad primes <= x.
    let out = run(&["verify", "--cache", s(&cache), "--interval", "full", "--x", "100,10000"]);
    for row in csv_rows(&out) {
        assert_eq!(row[4].parse::<f64>().unwrap(), 1.0);
    }
}

#[test]
fn verify_usage_and_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cache = cache_11a1(dir.path(), "1000");
    assert_eq!(run(&["verify", "--cache", s(&cache), "--interval", "2:1", "--x", "100"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--cache", s(&cache), "--x", "100,50"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "--cache", s(&cache), "--x", "5000"]).status.code(), Some(2));
    let missing = dir.path().join("missing.stan");
    let out = run(&["verify", "--cache", s(&missing), "--x", "100"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing.stan"));
    std::fs::write(dir.path().join("junk.stan"), b"not a cache at all, definitely not 40 bytes long").unwrap();
    let junk = run(&["verify", "--cache", s(&dir.path().join("junk.stan")), "--x", "100"]);
    assert_eq!(junk.status.code(), Some(2));
}

#[test]
fn verify_from_curve_and_coefficient_file() {
    let dir = tempfile::tempdir().unwrap();
    let cache = cache_11a1(dir.path(), "5000");
    let from_cache = run(&["verify", "--cache", s(&cache), "--x", "1000,5000"]);
    let from_curve = run(&["verify", "--curve", CURVE_11A1, "--conductor", "11", "--x", "1000,5000"]);
    assert_eq!(from_cache.stdout, from_curve.stdout);

    let series = build_angle_series(&AngleSource::Curve(catalog::c11a1()), 5000).unwrap();
    let mut text = String::from("# satotate-coeffs v1\nlabel=11a1\nweight=2\nlevel=11\nnormalized=true\n");
    for pt in &series.points {
        text.push_str(&format!("{} {:?}\n", pt.p, 2.0 * pt.theta.cos()));
    }
    let file = dir.path().join("11a1.txt");
    std::fs::write(&file, text).unwrap();
    let from_file = run(&["verify", "--coeffs", s(&file), "--x", "1000,5000"]);
    assert!(from_file.status.success());
    let counts = |o: &Output| csv_rows(o).iter().map(|r| r[2].clone()).collect::<Vec<_>>();
    assert_eq!(counts(&from_file), counts(&from_cache));
}

#[test]
fn least_prime_and_cheb_sums() {
    let dir = tempfile::tempdir().unwrap();
    let cache = cache_11a1(dir.path(), "1000");
    let out = run(&["least-prime", "--cache", s(&cache), "--interval", "0:1.5707963268"]);
    assert_eq!(csv_rows(&out)[0][0], "5");
    let out = run(&["least-prime", "--curve", CURVE_11A1, "--conductor", "11", "--interval", "half"]);
    assert_eq!(csv_rows(&out)[0][0], "5");
    let none = run(&["least-prime", "--curve", CURVE_11A1, "--conductor", "11", "--interval", "0:0.01", "--ceiling", "100"]);
    assert_eq!(none.status.code(), Some(2));

    let out = run(&["cheb-sums", "--cache", s(&cache), "--m", "0", "--x", "100"]);
    let direct: f64 = primes_up_to(100).into_iter().filter(|&p| p != 11).map(|p| (p as f64).ln()).sum();
    let row = &csv_rows(&out)[0];
    assert_eq!(row[2].parse::<f64>().unwrap(), 24.0);
    assert!((row[3].parse::<f64>().unwrap() - direct).abs() < 1e-9);
}

#[test]
fn smooth_prime_number_theorem_on_simulated_cache() {
    let dir = tempfile::tempdir().unwrap();
    let z = dir.path().join("z.stan");
    let sim = run(&["simulate", "--xmax", "1200000", "--seed", "1", "--out", s(&z)]);
    assert!(sim.status.success());
    let out = run(&["smooth", "--cache", s(&z), "--m", "0", "--x", "1000000", "--ell", "4", "--eps", "0.1"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let psi: f64 = csv_rows(&out)[0][4].parse().unwrap();
    assert!((psi - 1e6).abs() <= 3.0 * 0.1 * 1e6, "{psi}");
    let short = run(&["smooth", "--cache", s(&z), "--m", "0", "--x", "1100000"]);
    assert_eq!(short.status.code(), Some(2));
    let proof = run(&["smooth", "--cache", s(&z), "--m", "1", "--x", "1000000", "--preset", "paper-proof"]);
    assert_eq!(proof.status.code(), Some(2));
}

#[test]
fn fit_and_joint_commands() {
    let dir = tempfile::tempdir().unwrap();
    let a = cache_11a1(dir.path(), "100000");
    let b = dir.path().join("37a1.stan");
    assert!(run(&["angles", "--curve", "0,0,1,-1,0", "--conductor", "37", "--xmax", "100000", "--out", s(&b)]).status.success());
    let fit = run(&["fit", "--cache", s(&a), "--x", "1000,10000,100000"]);
    let rows = csv_rows(&fit);
    assert_eq!(rows.len(), 3);
    assert!(rows.iter().all(|r| r[4] == rows[0][4]));
    let two = run(&["fit", "--cache", s(&a), "--x", "1000,10000"]);
    assert_eq!(two.status.code(), Some(2));

    let joint = run(&["joint", "--cache", s(&a), "--cache2", s(&b), "--x", "100000"]);
    assert!(joint.status.success());
    let row = &csv_rows(&joint)[0];
    let count: f64 = row[2].parse().unwrap();
    let pi_x: f64 = row[1].parse().unwrap();
    assert!((count / pi_x - 0.25).abs() < 0.05);
}

#[test]
fn json_and_csv_agree() {
    let dir = tempfile::tempdir().unwrap();
    let cache = cache_11a1(dir.path(), "50000");
    let args = ["verify", "--cache", s(&cache), "--interval", "middle", "--x", "100,1000,50000"];
    let csv_out = run(&args);
    let json_out = bin().args(args).args(["--format", "json"]).output().unwrap();
    let json: Vec<serde_json::Map<String, serde_json::Value>> = serde_json::from_slice(&json_out.stdout).unwrap();
    let text = String::from_utf8(csv_out.stdout).unwrap();
    let mut reader = csv::ReaderBuilder::new().comment(Some(b'#')).from_reader(text.as_bytes());
    let header = reader.headers().unwrap().clone();
    let records: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(records.len(), json.len());
    for (rec, obj) in records.iter().zip(&json) {
        for (name, field) in header.iter().zip(rec.iter()) {
            let v = &obj[name];
            match v {
                serde_json::Value::Bool(b) => assert_eq!(field, b.to_string()),
                serde_json::Value::Number(n) => assert_eq!(field.parse::<f64>().unwrap(), n.as_f64().unwrap(), "{name}"),
                other => panic!("unexpected {other}"),
            }
        }
    }
}

#[test]
fn output_file_and_thread_settings() {
    let dir = tempfile::tempdir().unwrap();
    let cache = cache_11a1(dir.path(), "100000");
    let base = ["cheb-sums", "--cache", s(&cache), "--m", "0,1,2,7", "--x", "1000,100000"];
    let one = bin().args(base).args(["--threads", "1"]).output().unwrap();
    let env = bin().args(base).args(["--threads", "1"]).env("SATOTATE_THREADS", "6").output().unwrap();
    assert!(one.status.success() && env.status.success());
    assert_eq!(one.stdout, env.stdout);
    let bad_env = bin().args(base).env("SATOTATE_THREADS", "many").output().unwrap();
    assert_eq!(bad_env.status.code(), Some(2));

    let file = dir.path().join("sums.csv");
    let out = bin().args(base).args(["--out", s(&file)]).output().unwrap();
    assert!(out.status.success() && out.stdout.is_empty());
    assert_eq!(std::fs::read(&file).unwrap(), one.stdout);
}
