use std::path::PathBuf;
use std::process::{Command, Output};
use wkl::montecarlo::WishartSample;
use wkl::scaling_harness::ConvergenceRecord;

fn wkl(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wkl")).args(args).env_remove("WKL_SEED").output().unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("wkl-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

/// Split a CSV into metadata lines, the column row and data rows.
fn split_csv(text: &str) -> (Vec<&str>, Vec<&str>, Vec<Vec<&str>>) {
    let meta: Vec<&str> = text.lines().take_while(|l| l.starts_with('#')).collect();
    let mut rest = text.lines().skip(meta.len());
    let cols = rest.next().unwrap().split(',').collect();
    (meta, cols, rest.map(|l| l.split(',').collect()).collect())
}

#[test]
fn droplet_csv_and_plot() {
    let dir = scratch("droplet");
    let out = dir.join("droplet.csv");
    let o = wkl(&["droplet", "--tau", "0.5", "--grid", "40", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let (meta, cols, rows) = split_csv(&text);
    assert!(meta.iter().any(|l| l.starts_with("# schema_version: 1")));
    assert!(meta.iter().any(|l| l.contains("\"tau\":0.5")));
    assert_eq!(cols, ["kind", "x", "y", "omega"]);
    assert_eq!(rows.len(), 41 + 40 * 40);
    let omegas: Vec<f64> = rows.iter().map(|r| r[3].parse().unwrap()).filter(|v: &f64| !v.is_nan()).collect();
    assert!(omegas.iter().all(|&v| v >= -1e-9));
    let boundary_max = rows.iter().filter(|r| r[0] == "boundary").map(|r| r[3].parse::<f64>().unwrap().abs()).fold(0.0, f64::max);
    assert!(boundary_max < 1e-9);
    let gp = std::fs::read_to_string(dir.join("droplet.gp")).unwrap();
    assert!(gp.contains("'droplet.csv'"));
    assert!(!gp.replace("'droplet.csv'", "").contains(".csv"));
}

#[test]
fn verify_ode_reports() {
    let o = wkl(&["verify-ode", "--which", "thm-i", "--cases", "100", "--seed", "7"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 100);
    assert!(rows.iter().all(|r| r["rel_residual"].as_f64().unwrap() <= 1e-9));
    assert_eq!(v["meta"]["schema"], "verify-ode");
}

#[test]
fn exit_codes() {
    let o = wkl(&["droplet"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--tau"));
    let o = wkl(&["limit-compare", "--class", "complex", "--regime", "weak-bulk", "--p", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--c"));
    let o = wkl(&["kernel-eval", "--class", "complex", "--n", "10", "--nu", "1", "--tau", "1.5", "--grid", "0:1:0:1:2"]);
    assert_eq!(o.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "domain");
}

#[test]
fn sample_json_round_trip_and_seed_override() {
    let run = |seed: &str, env: Option<&str>| {
        let mut c = Command::new(env!("CARGO_BIN_EXE_wkl"));
        c.args(["sample", "--class", "symplectic", "--n", "6", "--nu", "1", "--tau", "0.5", "--trials", "3", "--seed", seed, "--format", "json"]);
        match env {
            Some(s) => c.env("WKL_SEED", s),
            None => c.env_remove("WKL_SEED"),
        };
        c.output().unwrap()
    };
    let a = run("1", None);
    assert!(a.status.success());
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    let samples: Vec<WishartSample> = serde_json::from_value(v["rows"].clone()).unwrap();
    assert_eq!(samples.len(), 3);
    assert!(samples.iter().all(|s| s.eigenvalues.len() == 6 && s.paired));
    assert_eq!(run("1", None).stdout, a.stdout);
    let b = run("2", Some("1"));
    let samples_b: Vec<WishartSample> = serde_json::from_value(serde_json::from_slice::<serde_json::Value>(&b.stdout).unwrap()["rows"].clone()).unwrap();
    assert_eq!(samples_b, samples);
}

#[test]
fn sample_csv_with_scientific_flags() {
    let dir = scratch("sample");
    let out = dir.join("eig.csv");
    let o = wkl(&["sample", "--class", "complex", "--n", "2e1", "--nu", "1", "--tau", "5e-1", "--trials", "2", "--seed", "3", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&out).unwrap();
    let (_, cols, rows) = split_csv(&text);
    assert_eq!(cols, ["trial", "re", "im"]);
    assert_eq!(rows.len(), 40);
    assert!(dir.join("eig.gp").exists());
}

#[test]
fn limit_compare_round_trip() {
    let o = wkl(&[
        "limit-compare", "--class", "complex", "--regime", "strong-bulk", "--tau", "0.5", "--p", "1,0",
        "--zeta-grid", "0,0;0.3,-0.2", "--n-list", "20,40", "--format", "json",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let recs: Vec<ConvergenceRecord> = serde_json::from_value(v["rows"].clone()).unwrap();
    assert_eq!(recs.len(), 4);
    assert!(recs.windows(2).all(|w| w[0].n <= w[1].n));
    assert!(recs.iter().all(|r| (r.limit_value - 1.0).abs() < 1e-12));
    // off-centre points carry an O(N^-1/2) density correction
    assert!(recs[0].abs_error < 1e-3 && recs[2].abs_error < recs[0].abs_error);
    assert!(recs[3].abs_error < recs[1].abs_error);
}

#[test]
fn kernel_and_limit_grids() {
    let o = wkl(&["kernel-eval", "--class", "symplectic", "--n", "10", "--nu", "0.5", "--tau", "0.4", "--grid", "0.5:1.5:-0.4:0.4:3", "--what", "corr2", "--w", "1,0.3"]);
    assert!(o.status.success());
    let text = String::from_utf8(o.stdout).unwrap();
    let (_, cols, rows) = split_csv(&text);
    assert_eq!(cols, ["re", "im", "value"]);
    assert_eq!(rows.len(), 9);
    assert!(rows.iter().all(|r| r[2].parse::<f64>().unwrap() >= -1e-9));
    let o = wkl(&["kernel-eval", "--class", "complex", "--n", "10", "--nu", "1", "--tau", "0.4", "--grid", "0:1:0:1:2", "--what", "corr2"]);
    assert_eq!(o.status.code(), Some(2));
    let o = wkl(&["limit-eval", "--class", "complex", "--regime", "weak-bulk", "--c", "1", "--p", "2", "--grid", "0:0:0:0:1"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let (_, _, rows) = split_csv(&text);
    let v: f64 = rows[0][2].parse().unwrap();
    assert!((v - wkl::specfun::erf(1.0)).abs() < 1e-12);
}
