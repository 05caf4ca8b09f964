use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_osd-latency"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout_rows(out: &Output) -> Vec<Vec<String>> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

fn summary(out: &Output) -> Value {
    serde_json::from_slice(&out.stderr).unwrap()
}

fn sidecar(path: &Path) -> Value {
    let mut p = path.as_os_str().to_owned();
    p.push(".json");
    serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn rate_table() {
    let out = run(&[
        "rate",
        "--n",
        "128",
        "--eps",
        "1e-3",
        "--snr-db-range",
        "0:10:0.5",
    ]);
    assert!(out.status.success());
    let rows = stdout_rows(&out);
    assert_eq!(rows[0], ["snr_db", "capacity", "dispersion", "rate"]);
    assert_eq!(rows.len(), 22);

    let out = run(&[
        "rate",
        "--n",
        "1000",
        "--eps",
        "1e-3",
        "--snr-db-range",
        "5:5:1",
    ]);
    let rows = stdout_rows(&out);
    assert_eq!(rows.len(), 2);
    let r: f64 = rows[1][3].parse().unwrap();
    assert!((r - 0.803).abs() < 5e-4);
    assert_eq!((1000.0 * r).floor(), 803.0);
}

#[test]
fn usage_errors_exit_2() {
    let out = run(&["rate", "--eps", "1e-3", "--snr-db-range", "0:1:1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
    assert_eq!(
        run(&[
            "rate",
            "--n",
            "10",
            "--eps",
            "1e-3",
            "--snr-db-range",
            "3:1:1"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(
        run(&["simulate", "--code", "8x4", "--order", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        run(&["scenario", "--which", "min-latency", "--pm-db", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_3() {
    let out = run(&[
        "simulate", "--order", "99", "--code", "8x4", "--snr-db", "3",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("precondition"));
    let out = run(&[
        "simulate", "--order", "1", "--code", "63x36", "--snr-db", "3",
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("construction"));
    assert_eq!(
        run(&["rate", "--n", "10", "--eps", "2", "--snr-db-range", "0"])
            .status
            .code(),
        Some(3)
    );
}

#[test]
fn simulate_is_reproducible_across_runs_and_workers() {
    let dir = tempfile::tempdir().unwrap();
    let mut texts = Vec::new();
    for (i, workers) in ["1", "3", "1"].iter().enumerate() {
        let path = dir.path().join(format!("sim{i}.csv"));
        let out = bin()
            .env("OSD_LATENCY_WORKERS", workers)
            .args([
                "simulate", "--code", "8x4", "--order", "4", "--snr-db", "6", "--seed", "7",
            ])
            .arg("--out")
            .arg(&path)
            .output()
            .unwrap();
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        texts.push((std::fs::read(&path).unwrap(), sidecar(&path)));
    }
    assert!(texts.windows(2).all(|w| w[0] == w[1]));
    let csv = String::from_utf8(texts[0].0.clone()).unwrap();
    assert!(csv.starts_with("snr_db,s,trials,errors,bler,ci95\n6,4,"));
    assert_eq!(texts[0].1["seed"], 7);
    assert_eq!(texts[0].1["pattern_count_mismatches"], 0);
}

#[test]
fn simulate_required_snr_column() {
    let out = run(&[
        "simulate",
        "--code",
        "64x36",
        "--order",
        "1",
        "--eps",
        "1e-2",
        "--min-errors",
        "30",
        "--grid-db",
        "0.5",
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows = stdout_rows(&out);
    assert_eq!(rows[0].last().unwrap(), "required_snr_db");
    let s = summary(&out);
    let req = s["required_snr_db"].as_f64().unwrap();
    assert_eq!(
        rows.last().unwrap().last().unwrap().parse::<f64>().unwrap(),
        req
    );
    assert!(req > s["normal_approx_snr_db"].as_f64().unwrap());
}

#[test]
fn scenario_examples() {
    let out = run(&[
        "scenario", "--which", "max-k", "--dm", "1e-3", "--pm-db", "5", "--eps", "1e-3", "--tb",
        "0",
    ]);
    assert!(out.status.success());
    let s = summary(&out);
    assert_eq!(s["optimum"]["k"], 803);
    assert_eq!(s["optimum"]["n"], 1000);

    let out = run(&[
        "scenario",
        "--which",
        "min-latency",
        "--k",
        "64",
        "--pm-db",
        "10",
        "--eps",
        "1e-3",
        "--tb",
        "1e-9",
    ]);
    let n = summary(&out)["optimum"]["n"].as_f64().unwrap();
    assert!((n - 78.0).abs() <= 0.15 * 78.0, "n_opt = {n}");

    let out = run(&[
        "scenario", "--which", "max-rate", "--n", "128", "--dm", "1e9",
    ]);
    let rows = stdout_rows(&out);
    let col = |name: &str| rows[0].iter().position(|h| h == name).unwrap();
    let (rate, snr, na) = (col("rate"), col("snr_db"), col("na_snr_db"));
    assert_eq!(rows.len(), 20);
    for r in &rows[1..] {
        assert_eq!(r[snr], r[na]);
        let x: f64 = r[snr].parse().unwrap();
        let expect = osd_latency::fblmath::normal_approx_rate(
            128,
            osd_latency::fblmath::ReliabilityTarget::new(1e-3).unwrap(),
            osd_latency::fblmath::Snr::from_db(x).unwrap(),
        );
        assert!((expect - r[rate].parse::<f64>().unwrap()).abs() < 1e-6);
    }
}

#[test]
fn infeasible_scenario_is_a_valid_answer() {
    let out = run(&[
        "scenario",
        "--which",
        "min-latency",
        "--k",
        "64",
        "--pm-db",
        "-20",
        "--n-max",
        "300",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let s = summary(&out);
    assert!(s["optimum"].is_null());
    assert_eq!(s["feasible_points"], 0);
}

#[test]
fn config_file_overrides_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(&cfg, r#"{"n": 1000, "snr_db_range": "5:5:1"}"#).unwrap();
    let out = run(&[
        "rate",
        "--n",
        "128",
        "--eps",
        "1e-3",
        "--snr-db-range",
        "0:3:1",
        "--config",
        cfg.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let rows = stdout_rows(&out);
    assert_eq!(rows.len(), 2);
    assert!(rows[1][3].starts_with("0.803"));

    std::fs::write(&cfg, r#"{"colour": "blue"}"#).unwrap();
    let out = run(&[
        "rate",
        "--n",
        "128",
        "--eps",
        "1e-3",
        "--snr-db-range",
        "0",
        "--config",
        cfg.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tradeoff_fit_recovers_planted_constants() {
    let dir = tempfile::tempdir().unwrap();
    let data = dir.path().join("points.csv");
    let mut text = String::from("delta_rho_db,c\n");
    for i in 1..=12 {
        let d = 0.5 * i as f64;
        let c = (1.0 / (0.04 * f64::powf(d, 0.5) + 0.02)).exp2();
        text += &format!("{d},{c}\n");
    }
    std::fs::write(&data, text).unwrap();
    let out = run(&["tradeoff", "--fit", data.to_str().unwrap(), "--n", "100"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let p = &summary(&out)["params"];
    assert!((p["a"].as_f64().unwrap() - 0.04).abs() < 1e-6);
    assert!((p["b"].as_f64().unwrap() - 0.02).abs() < 1e-6);
    assert!((p["gamma_fit"].as_f64().unwrap() - 0.5).abs() < 1e-6);
    assert_eq!(p["n_anchor"], 100);

    let out = run(&["tradeoff", "--n", "128", "--complexity", "1906.25"]);
    let rows = stdout_rows(&out);
    assert!((rows[1][1].parse::<f64>().unwrap() - 3.3).abs() < 0.05);
}

#[test]
fn complexity_table() {
    let out = run(&[
        "complexity",
        "--n",
        "128",
        "--k",
        "64",
        "--dm",
        "1e-3",
        "--dmin",
        "22",
    ]);
    assert!(out.status.success());
    let rows = stdout_rows(&out);
    assert_eq!(
        rows[0],
        [
            "s",
            "patterns",
            "c_exact",
            "c_bound",
            "dominant_term",
            "total_latency_s"
        ]
    );
    assert_eq!(rows[2][1], "65");
    let s = summary(&out);
    assert_eq!(s["max_order"]["s_star"], 1);
    assert_eq!(s["recommended_order"], 5);
}

#[test]
fn outputs_are_byte_identical_on_rerun() {
    let cases: [&[&str]; 4] = [
        &[
            "rate",
            "--n",
            "128",
            "--eps",
            "1e-5",
            "--snr-db-range",
            "-2:6:0.25",
        ],
        &["complexity", "--n", "64", "--k", "36", "--max-order", "6"],
        &["tradeoff", "--n", "91"],
        &[
            "scenario", "--which", "max-k", "--pm-db", "5", "--tb", "1e-9", "--n-max", "300",
        ],
    ];
    for args in cases {
        let a = run(args);
        let b = run(args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stderr, b.stderr, "{args:?}");
    }
}
