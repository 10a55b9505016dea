use std::f64::consts::TAU;
use std::fs;
use std::process::Command;

use l1tv::cli::{parse_key_value_report, read_signal, write_result, AngleUnit};
use l1tv::{energy, Metric, Signal};
use rand::{Rng, SeedableRng};

fn l1tv() -> Command {
    Command::new(env!("CARGO_BIN_EXE_l1tv"))
}

fn report_value(text: &str, key: &str) -> String {
    parse_key_value_report(text)
        .into_iter()
        .find(|(k, _)| k == key)
        .unwrap_or_else(|| panic!("missing {key}"))
        .1
}

#[test]
fn round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let values: Vec<f64> = (0..200).map(|_| rng.gen_range(-3.0..3.0)).collect();
    let weights: Vec<f64> = (0..200).map(|_| rng.gen_range(0.0..2.0)).collect();

    let path = dir.path().join("r.txt");
    write_result(fs::File::create(&path).unwrap(), &values, Some(&weights), AngleUnit::Radians).unwrap();
    let back = read_signal(&path, Metric::Real, AngleUnit::Radians, true).unwrap();
    assert_eq!(back.signal.values(), values.as_slice());
    assert_eq!(back.signal.weights(), weights.as_slice());

    let path = dir.path().join("d.txt");
    write_result(fs::File::create(&path).unwrap(), &values, None, AngleUnit::Degrees).unwrap();
    let back = read_signal(&path, Metric::Circular, AngleUnit::Degrees, false).unwrap();
    for (a, b) in back.signal.values().iter().zip(&values) {
        assert!(Metric::Circular.distance(*a, *b) < 1e-12);
    }
}

#[test]
fn solves_a_file_and_reports_consistent_energy() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.txt");
    fs::write(&input, "# angles\n350,1\n355,2\n5,1\n10,1\n180,0.5\n12,1\n").unwrap();
    let out = dir.path().join("out.txt");
    let report = dir.path().join("report.txt");
    let plot = dir.path().join("plot.csv");
    let status = l1tv()
        .args(["--alpha", "0.8", "--circular", "--degrees", "--weights", "--input"])
        .arg(&input)
        .arg("--output")
        .arg(&out)
        .arg("--report")
        .arg(&report)
        .arg("--plot")
        .arg(&plot)
        .status()
        .unwrap();
    assert!(status.success());

    let signal = read_signal(&input, Metric::Circular, AngleUnit::Degrees, true).unwrap().signal;
    let result = read_signal(&out, Metric::Circular, AngleUnit::Degrees, true).unwrap().signal;
    assert_eq!(result.weights(), signal.weights());
    let text = fs::read_to_string(&report).unwrap();
    assert_eq!(report_value(&text, "n"), "6");
    assert_eq!(report_value(&text, "metric"), "circular");
    let reported: f64 = report_value(&text, "energy").parse().unwrap();
    let recomputed = energy(&signal, result.values(), 0.8).unwrap();
    assert!((reported - recomputed).abs() <= 1e-10 * reported.max(1.0), "{reported} vs {recomputed}");
    assert_eq!(fs::read_to_string(&plot).unwrap().lines().count(), 6);
    assert!(fs::read_to_string(&plot).unwrap().starts_with("0,"));
}

#[test]
fn zero_alpha_returns_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.txt");
    fs::write(&input, "1.5\n-2\n0.25\n7\n").unwrap();
    let out = dir.path().join("out.txt");
    let status = l1tv()
        .args(["--alpha", "0", "--input"])
        .arg(&input)
        .arg("--output")
        .arg(&out)
        .arg("--report")
        .arg(dir.path().join("r.txt"))
        .status()
        .unwrap();
    assert!(status.success());
    let back = read_signal(&out, Metric::Real, AngleUnit::Radians, false).unwrap();
    assert_eq!(back.signal.values(), &[1.5, -2.0, 0.25, 7.0]);
}

#[test]
fn synthetic_runs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for i in 0..2 {
        let out = dir.path().join(format!("out{i}.txt"));
        let status = l1tv()
            .args(["--alpha", "1.0", "--circular", "--synthetic", "500,5,0.3,42", "--output"])
            .arg(&out)
            .arg("--report")
            .arg(dir.path().join(format!("r{i}.json")))
            .args(["--report-format", "json"])
            .status()
            .unwrap();
        assert!(status.success());
        outputs.push(fs::read(&out).unwrap());
    }
    assert_eq!(outputs[0], outputs[1]);
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("r0.json")).unwrap()).unwrap();
    assert_eq!(json["n"], 500);
}

#[test]
fn quantized_wind_style_data() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("wind.txt");
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
    let mut text = String::from("# direction in degrees, one reading per 10 minutes\n");
    let mut dir_deg: f64 = 200.0;
    for _ in 0..5000 {
        dir_deg = (dir_deg + rng.gen_range(-15.0..15.0)).rem_euclid(360.0);
        text.push_str(&format!("{:.1}\n", dir_deg));
    }
    fs::write(&input, text).unwrap();
    let report = dir.path().join("r.txt");
    let out = dir.path().join("o.txt");
    let status = l1tv()
        .args(["--alpha", "5", "--circular", "--degrees", "--quantize", "360", "--input"])
        .arg(&input)
        .arg("--output")
        .arg(&out)
        .arg("--save-input")
        .arg(dir.path().join("q.txt"))
        .arg("--report")
        .arg(&report)
        .status()
        .unwrap();
    assert!(status.success());
    let text = fs::read_to_string(&report).unwrap();
    let k: usize = report_value(&text, "k").parse().unwrap();
    // even level counts are closed under antipodes, so augmentation adds nothing
    assert!(k <= 360, "K = {k}");
    let q = read_signal(&dir.path().join("q.txt"), Metric::Circular, AngleUnit::Degrees, false).unwrap();
    for &t in q.signal.values() {
        let m = t / (TAU / 360.0);
        assert!((m - m.round()).abs() < 1e-6);
    }
}

#[test]
fn failures_exit_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.txt");
    fs::write(&bad, "1\nabc\n").unwrap();
    let out = l1tv().args(["--alpha", "1", "--input"]).arg(&bad).output().unwrap();
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out = l1tv().args(["--alpha", "-1", "--synthetic", "10,2,0.1,1"]).output().unwrap();
    assert!(!out.status.success());

    let out = l1tv().args(["--alpha", "1"]).output().unwrap();
    assert!(!out.status.success());

    let out = l1tv()
        .args(["--alpha", "1", "--input", "/nonexistent/file"])
        .output()
        .unwrap();
    assert!(!out.status.success());
}

#[test]
fn stdout_output_parses() {
    let out = l1tv()
        .args(["--alpha", "0.5", "--synthetic", "50,3,0.1,9"])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let sig = l1tv::cli::parse_signal(&text, Metric::Real, AngleUnit::Radians, false).unwrap();
    assert_eq!(sig.signal.len(), 50);
    let _ = Signal::real(sig.signal.values().to_vec()).unwrap();
    assert!(String::from_utf8(out.stderr).unwrap().contains("n=50"));
}
