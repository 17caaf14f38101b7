use std::process::{Command, Output};

use serde_json::Value;

fn gic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gic")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = gic(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn ch(extra: &[&'static str], p: [&'static str; 4]) -> Vec<&'static str> {
    let mut v = extra.to_vec();
    v.extend(["--snr1", p[0], "--snr2", p[1], "--inr1", p[2], "--inr2", p[3]]);
    v
}

#[test]
fn classify_symmetric_db() {
    let v = json(&ch(&["classify", "--db"], ["20", "20", "10", "10"]));
    assert_eq!(v["class"], "weak");
    assert_eq!(v["regime"], 2);
    assert_eq!(v["bset"], "B2");
    assert_eq!(v["alpha"], 0.5);
    assert_eq!(v["very_strong"], false);
}

#[test]
fn classify_asymmetric_has_only_class() {
    let v = json(&ch(&["classify"], ["100", "10", "20", "5"]));
    assert_eq!(v, serde_json::json!({"class": "mixed_strong_at_1"}));
}

#[test]
fn classify_very_strong() {
    let v = json(&ch(&["classify"], ["10", "10", "200", "200"]));
    assert_eq!(v["class"], "strong");
    assert_eq!(v["very_strong"], true);
    assert_eq!(v["regime"], 5);
}

#[test]
fn missing_flag_is_usage_error() {
    let out = gic(&["classify", "--snr2", "1", "--inr1", "1", "--inr2", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--snr1"));
}

#[test]
fn negative_power_is_usage_error() {
    let out = gic(&ch(&["classify"], ["-1", "1", "1", "1"]));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn weak_region_certificates() {
    let v = json(&ch(&["region"], ["100", "100", "10", "10"]));
    assert_eq!(v["one_bit"], true);
    assert_eq!(v["within_half"], true);
    assert_eq!(v["inner"]["constraints"].as_array().unwrap().len(), 7);
    assert!(v["outer"]["vertices"].as_array().unwrap().len() >= 3);
}

#[test]
fn strong_region_is_exact() {
    let v = json(&ch(&["region"], ["10", "10", "100", "100"]));
    assert_eq!(v["inner_equals_outer"], true);
    assert_eq!(v["inner"]["vertices"], v["outer"]["vertices"]);
    assert_eq!(v["symmetric_rate_inner"], v["symmetric_rate_outer"]);
}

#[test]
fn explicit_split_out_of_range() {
    let out = gic(&ch(&["region", "--inr-p2", "20", "--inr-p1", "1"], ["100", "100", "10", "10"]));
    assert_eq!(out.status.code(), Some(2));
    let ok = gic(&ch(&["region", "--inr-p2", "5", "--inr-p1", "1"], ["100", "100", "10", "10"]));
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn region_csv_lists_vertices() {
    let out = gic(&ch(&["region", "--format", "csv"], ["100", "100", "10", "10"]));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("region,r1,r2"));
    assert!(lines.all(|l| l.starts_with("inner,") || l.starts_with("outer,")));
}

#[test]
fn symrate_anchor() {
    let v = json(&["symrate", "--snr", "100", "--inr", "10"]);
    assert!((v["hk_rate"].as_f64().unwrap() - (21f64.log2() - 1.0)).abs() < 1e-9);
    assert_eq!(v["regime"], 2);
    assert!(v["pt2pt_ub"].is_null());
}

#[test]
fn gap_audit_passes() {
    let v = json(&ch(&["gap-audit"], ["100", "100", "10", "10"]));
    assert_eq!(v["pass"], true);
    assert!((v["delta_r1"].as_f64().unwrap() - 0.98578614078).abs() < 1e-9);
}

#[test]
fn sweep_zero_is_usage_error() {
    assert_eq!(gic(&["sweep", "-n", "0"]).status.code(), Some(2));
}

#[test]
fn sweep_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    let ra = gic(&["sweep", "-n", "50", "--seed", "9", "--class", "mixed", "--out", a.to_str().unwrap()]);
    let rb = gic(&["sweep", "-n", "50", "--seed", "9", "--class", "mixed", "--out", b.to_str().unwrap()]);
    assert_eq!(ra.status.code(), Some(0));
    assert_eq!(ra.stdout, rb.stdout);
    let (ca, cb) = (std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    assert_eq!(ca, cb);
    let text = String::from_utf8(ca).unwrap();
    assert!(text.starts_with("snr1_db,snr2_db,inr1_db,inr2_db,class,delta_r1,"));
    assert_eq!(text.lines().count(), 51);
    let summary: Value = serde_json::from_slice(&ra.stdout).unwrap();
    assert_eq!(summary["n"], 50);
    assert_eq!(summary["seed"], 9);
    assert_eq!(summary["failures"], 0);
}

#[test]
fn sweep_unwritable_path_is_io_error() {
    let out = gic(&["sweep", "-n", "3", "--out", "/nonexistent-dir/x.csv"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn sweep_violation_exits_3() {
    let out = gic(&["sweep", "-n", "20", "--seed", "1", "--class", "mixed", "--gap-bits", "0.01"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn gdof_symmetric_and_general() {
    let v = json(&["gdof", "--alpha", "0.75"]);
    assert_eq!(v["d_sym"], 0.625);
    let g = json(&["gdof", "--alpha1", "1", "--alpha2", "0.5", "--alpha3", "0.5"]);
    assert_eq!(g["class"], "weak");
    assert_eq!(gic(&["gdof"]).status.code(), Some(2));
}

#[test]
fn diffrate_bits_scale() {
    let v = json(&["diffrate", "--z", "0.1"]);
    let r1 = v["r1"].as_f64().unwrap();
    assert!((r1 - 1.0 / 0.11).abs() < 1e-9);
    assert!((v["r1_bits"].as_f64().unwrap() - r1 / std::f64::consts::LN_2).abs() < 1e-9);
}

fn figure(id: &str) -> Vec<Vec<String>> {
    let out = gic(&["figures", id, "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    String::from_utf8(out.stdout).unwrap().lines().map(|l| l.split(',').map(str::to_string).collect()).collect()
}

fn row<'a>(t: &'a [Vec<String>], key: &str) -> &'a [String] {
    t.iter().find(|r| r[0] == key).unwrap_or_else(|| panic!("no row {key}"))
}

#[test]
fn figure_rows() {
    let g = figure("gdof-curve");
    assert_eq!(g[0], ["alpha", "d_sym", "d_orth", "d_tin"]);
    assert_eq!(row(&g, "0.75")[1..], ["0.625", "0.5", "0.25"]);
    let h = figure("hk-fraction");
    assert_eq!(row(&h, "0.6")[1], "0.6");
    let d = figure("diff-rates");
    assert_eq!(row(&d, "0.1")[1..], ["9.09090909091", "5"]);
    let u = figure("ub-vs-hk");
    assert_eq!(u[0], ["alpha", "hk", "genie_ub"]);
    let r = figure("gdof-region");
    assert_eq!(r[0], ["d1", "d2"]);
}

#[test]
fn figure_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("g.csv");
    let out = gic(&["figures", "gdof-curve", "--out", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&p).unwrap().lines().count(), 253);
}

#[test]
fn unknown_figure_is_usage_error() {
    assert_eq!(gic(&["figures", "nope"]).status.code(), Some(2));
}
