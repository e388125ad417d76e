use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn abwave(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_abwave")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn rows(path: &Path) -> Vec<Vec<f64>> {
    let text = fs::read_to_string(path).unwrap();
    text.lines().skip(1).map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect()
}

// L2(r dr) distance of two r,re,im tables, relative to the second
fn rel_l2(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let (mut num, mut den) = (0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        assert_eq!(x[0], y[0]);
        let w = x[0] * x[0];
        num += w * ((x[1] - y[1]).powi(2) + (x[2] - y[2]).powi(2));
        den += w * (y[1] * y[1] + y[2] * y[2]);
    }
    (num / den).sqrt()
}

// coarse grid: the spectral isometry floor is ~3e-10 here, ~3e-11 on the default grid
fn small_config() -> Value {
    serde_json::json!({
        "alpha": [0.5],
        "m": [-1, 0, 2],
        "sign": ["plus", "minus"],
        "grid": { "u_min": -10.0, "u_max": 10.0, "n": 2048 },
        "corpus": [
            { "center": 0.0, "width": 1.0 },
            { "center": -0.5, "width": 0.8, "frequency": 2.0 }
        ],
        "tolerances": {
            "routes": 1e-4, "shrink": 4.0, "isometry_spectral": 1e-9, "isometry_stationary": 1e-4,
            "scattering": 1e-4, "t_operator": 1e-4, "bracket": 1e-10
        },
        "convergence": false,
        "probe": { "angle": 0.3 }
    })
}

fn write_config(dir: &Path, name: &str, v: &Value) -> String {
    let p = dir.join(name);
    fs::write(&p, serde_json::to_string_pretty(v).unwrap()).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn symbols_table_is_unimodular_and_reaches_limits() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("phi.csv");
    let o = abwave(&[
        "symbols",
        "--m",
        "-1",
        "--alpha",
        "0.3",
        "--sign",
        "plus",
        "--range",
        "-100,100",
        "--n",
        "401",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("x,re_phi,im_phi,abs_phi\n"));
    let t = rows(&out);
    assert_eq!(t.len(), 401);
    assert!(t.iter().all(|r| (r[3] - 1.0).abs() <= 1e-6));
    // sign +: e^{-2 i delta} at -inf and 1 at +inf, delta = pi (|m| - |m + alpha|) / 2
    let delta = std::f64::consts::PI * (1.0 - 0.7) / 2.0;
    let first = &t[0];
    let last = &t[400];
    assert!(((first[1] - (2.0 * delta).cos()).powi(2) + (first[2] + (2.0 * delta).sin()).powi(2)).sqrt() < 0.03);
    assert!(((last[1] - 1.0).powi(2) + last[2].powi(2)).sqrt() < 0.03);
}

#[test]
fn symbols_single_row_and_unsupported_tilde() {
    let o = abwave(&["symbols", "--m", "0", "--alpha", "0.5", "--n", "1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(String::from_utf8(o.stdout).unwrap().lines().count(), 2);
    let o = abwave(&["symbols", "--m", "5", "--alpha", "0.5", "--tilde"]);
    assert_eq!(code(&o), 2);
    let o = abwave(&["symbols", "--m", "0", "--alpha", "1.5"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn routes_agree_and_zero_maps_to_zero() {
    let dir = tempfile::tempdir().unwrap();
    let run = |route: &str, bump: &str| {
        let out = dir.path().join(format!("{route}{}.csv", bump.len()));
        let o = abwave(&[
            "apply",
            "--route",
            route,
            "--m",
            "-2",
            "--alpha",
            "0.2",
            "--sign",
            "minus",
            "--bump",
            bump,
            "--out",
            out.to_str().unwrap(),
        ]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
        rows(&out)
    };
    let st = run("stationary", "-0.5,0.8,2");
    let sp = run("spectral", "-0.5,0.8,2");
    let me = run("mellin", "-0.5,0.8,2");
    assert_eq!(st.len(), 4096);
    assert!(rel_l2(&st, &sp) <= 1e-4);
    assert!(rel_l2(&me, &sp) <= 1e-5);
    let zero = run("stationary", "-0.5,0.8,2,0");
    assert!(zero.iter().all(|r| r[1] == 0.0 && r[2] == 0.0));
}

#[test]
fn apply_rejects_bumps_outside_the_grid() {
    let o = abwave(&[
        "apply",
        "--route",
        "spectral",
        "--m",
        "0",
        "--alpha",
        "0.5",
        "--bump",
        "9.5,1",
        "--grid",
        "-10,10,1024",
    ]);
    assert_eq!(code(&o), 2);
}

#[test]
fn verify_report_is_complete_and_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "cfg.json", &small_config());
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for out in [&a, &b] {
        let o = abwave(&["verify", "--config", &cfg, "--out", out.to_str().unwrap()]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    let (ta, tb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ta, tb);
    let r: Value = serde_json::from_slice(&ta).unwrap();
    assert_eq!(r["pass"], true);
    // |m| |alpha| |sign| |corpus| = 3 * 1 * 2 * 2; T_m: |tilde.m| |alpha| |corpus| = 2 * 1 * 2
    for fam in ["routes", "isometry", "scattering"] {
        assert_eq!(r[fam].as_array().unwrap().len(), 12, "{fam}");
    }
    assert_eq!(r["t_operator"].as_array().unwrap().len(), 4);
    assert_eq!(r["bracket"].as_array().unwrap().len(), 2);
    assert_eq!(r["assembly_probe"].as_array().unwrap().len(), 2);
    assert!(r["routes"][0]["ratio"].is_null());
    // 17 significant digits
    let text = String::from_utf8(ta).unwrap();
    assert!(text.contains("\"alpha\": 5.0000000000000000e-1"));
}

#[test]
fn verify_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let mut zero_tol = small_config();
    zero_tol["tolerances"]["routes"] = 0.0.into();
    zero_tol["m"] = serde_json::json!([1]);
    let cfg = write_config(dir.path(), "zero.json", &zero_tol);
    let out = dir.path().join("r.json");
    let o = abwave(&["verify", "--config", &cfg, "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    let r: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["pass"], false);

    let mut bad = small_config();
    bad["tilde"] = serde_json::json!({ "m": [5] });
    let cfg = write_config(dir.path(), "tilde.json", &bad);
    assert_eq!(code(&abwave(&["verify", "--config", &cfg])), 2);

    let broken = dir.path().join("broken.json");
    fs::write(&broken, "{ \"alpha\": [0.5], ").unwrap();
    assert_eq!(code(&abwave(&["verify", "--config", broken.to_str().unwrap()])), 2);

    let missing = dir.path().join("missing.json");
    assert_eq!(code(&abwave(&["verify", "--config", missing.to_str().unwrap()])), 3);

    let mut tiny = small_config();
    tiny["m"] = serde_json::json!([0]);
    tiny["sign"] = serde_json::json!(["plus"]);
    let good = write_config(dir.path(), "tiny.json", &tiny);
    let o = abwave(&["verify", "--config", &good, "--out", "/nonexistent-dir/r.json"]);
    assert_eq!(code(&o), 3);
}

#[test]
fn kernel_dump_matches_oracle() {
    let dir = tempfile::tempdir().unwrap();
    let table = dir.path().join("k.csv");
    let o = abwave(&[
        "kernel",
        "--kind",
        "jj",
        "--mu",
        "1",
        "--nu",
        "0.7",
        "--window",
        "0.5,0.9",
        "--oracle",
        "--table",
        table.to_str().unwrap(),
        "--n",
        "11",
    ]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let d: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(d["rel_err"].as_f64().unwrap() <= 1e-3);
    assert_eq!(d["im_c_delta"].as_f64().unwrap(), 0.0);
    assert_eq!(rows(&table).len(), 11);
    let o = abwave(&["kernel", "--kind", "hj", "--mu", "3", "--nu", "0.5", "--window", "0.5,0.9"]);
    assert_eq!(code(&o), 2);
}

#[test]
fn shipped_default_config_passes() {
    let o = abwave(&["verify", "--print-default"]);
    assert_eq!(code(&o), 0);
    let cfg: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(cfg["grid"]["n"], 4096);
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.json");
    let start = std::time::Instant::now();
    let o = abwave(&["verify", "--out", out.to_str().unwrap()]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(start.elapsed().as_secs() < 600);
    let r: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r["routes"].as_array().unwrap().len(), 7 * 3 * 2 * 3);
}
