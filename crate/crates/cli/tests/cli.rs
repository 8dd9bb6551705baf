use std::path::Path;
use std::process::Command;

use moment_core::families::generate;
use serde_json::Value;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("{e}: {}", self.stdout))
    }
}

fn moments(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_moments"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn value(v: &Value) -> f64 {
    let text = v["value"].as_str().unwrap();
    match text.split_once('/') {
        Some((p, q)) => p.parse::<f64>().unwrap() / q.parse::<f64>().unwrap(),
        None => text.parse().unwrap(),
    }
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_str().unwrap().to_string()
}

/// Lognormal moments as a moment file with enough digits for 512-bit work.
fn lognormal_file(dir: &Path) -> String {
    let seq = generate("lognormal", 80, 640).unwrap();
    let ms: Vec<String> = seq.gamma.iter().map(|g| format!("\"{}\"", g.render(190))).collect();
    let body = format!(
        "{{\n  \"kind\": \"stieltjes\",\n  \"label\": \"lognormal\",\n  \"moments\": [\n    {}\n  ]\n}}\n",
        ms.join(",\n    ")
    );
    write(dir, "lognormal.json", &body)
}

#[test]
fn analyze_laguerre() {
    let r = moments(&["analyze", "--generator", "laguerre", "--terms", "12"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let d = r.json();
    assert_eq!(d["status"], "ok");
    assert_eq!(d["result"]["verdict"], "stieltjes_ok");
    assert_eq!(d["input"]["mode"], "exact");
    assert_eq!(d["input"]["digest"].as_str().unwrap().len(), 64);
    let h = d["result"]["h"].as_array().unwrap();
    assert_eq!(h.len(), 8);
    // h_n = prod_{k<n} (k!)^2 for the factorial moments.
    assert_eq!(h[3]["value"], "4");
    assert_eq!(h[3]["mode"], "exact");
    assert_eq!(d["reproducibility"]["parameters"]["terms"], 12);
}

#[test]
fn pade_bracket_tightens() {
    let mut widths = Vec::new();
    for nmax in ["4", "7", "10"] {
        let r = moments(&["pade", "--generator", "laguerre", "--x", "1", "--nmax", nmax, "--shapes", "-1,0,1"]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        let d = r.json();
        for row in d["result"]["rows"].as_array().unwrap() {
            assert_eq!(row["monotone"], true, "shape {}", row["ell"]);
        }
        let b = &d["result"]["bracket"];
        let (lo, hi) = (value(&b["lower"]), value(&b["upper"]));
        assert!(lo >= 0.5 && hi <= 2.0 / 3.0 && lo < hi, "[{lo}, {hi}]");
        widths.push(hi - lo);
    }
    assert!(widths.windows(2).all(|w| w[1] < w[0]), "{widths:?}");
}

#[test]
fn pade_csv() {
    let r = moments(&["pade", "--generator", "laguerre", "--nmax", "3", "--format", "csv"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines[0], "ell,N,n,m,value,mode");
    assert_eq!(lines[1], "0,1,0,1,1/2,exact");
    assert!(lines.contains(&"1,1,1,1,2/3,exact"));
}

#[test]
fn classify_lognormal_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = lognormal_file(dir.path());
    let r = moments(&["classify", "--file", &path, "--precision", "512", "--depth", "40"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let d = r.json();
    assert_eq!(d["result"]["verdict"], "indeterminate");
    assert_eq!(d["input"]["mode"], "float512");
    assert_eq!(d["input"]["kind"], "stieltjes");
}

#[test]
fn classify_determinate_families() {
    for family in ["hermite", "laguerre"] {
        let r = moments(&["classify", "--generator", family, "--depth", "30"]);
        assert_eq!(r.code, 0, "{}", r.stderr);
        assert_eq!(r.json()["result"]["verdict"], "hamburger_determinate", "{family}");
    }
}

#[test]
fn output_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let path = lognormal_file(dir.path());
    for args in [
        vec!["quadrature", "--file", path.as_str(), "--depth", "8"],
        vec!["nevanlinna", "--generator", "lognormal", "--depth", "20", "--z", "1,1"],
        vec!["classify", "--generator", "lognormal", "--depth", "20"],
    ] {
        let a = moments(&args);
        let b = moments(&args);
        assert_eq!(a.code, 0, "{}", a.stderr);
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("q.csv");
    let r = moments(&[
        "quadrature", "--generator", "hermite", "--depth", "2", "--format", "csv",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.is_empty());
    let text = std::fs::read_to_string(out).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], "index,node,weight,mode");
    assert!(rows[1].starts_with("1,-1.0") && rows[2].starts_with("2,1.0"), "{text}");
}

#[test]
fn quadrature_and_sections() {
    let r = moments(&["quadrature", "--generator", "laguerre", "--depth", "3", "--variant", "K"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let d = r.json();
    assert_eq!(d["result"]["reproduced_through"], 4);
    assert!(value(&d["result"]["max_moment_error"]) < 1e-60);
    assert!(value(&d["result"]["nodes"][0]).abs() < 1e-60);

    let r = moments(&["jacobi", "--generator", "laguerre", "--depth", "2", "--variant", "K"]);
    let d = r.json();
    assert_eq!(d["result"]["section"]["alpha"]["value"], "2");
    let diag: Vec<&str> = d["result"]["section"]["diag"].as_array().unwrap().iter().map(|v| v["value"].as_str().unwrap()).collect();
    assert_eq!(diag, ["1", "1"]);
}

#[test]
fn nevanlinna_report() {
    let r = moments(&["nevanlinna", "--generator", "lognormal", "--depth", "40"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let d = r.json();
    assert!(value(&d["result"]["det_residual"]) < 1e-60);
    assert!(value(&d["result"]["weyl_disk"]["radius"]) > 1e-2);
    assert_eq!(d["result"]["z"]["im"]["value"], "1");
}

#[test]
fn transform_output_reads_back() {
    let dir = tempfile::tempdir().unwrap();
    let r = moments(&["transform", "--generator", "laguerre", "--terms", "8", "--op", "index-shift", "--ell", "1"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let d = r.json();
    let file = d["result"]["moment_file"].to_string();
    let moments_list: Vec<&str> = d["result"]["moment_file"]["moments"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(moments_list[..4], ["1", "2", "6", "24"]);
    let path = write(dir.path(), "shifted.json", &file);
    let back = moments(&["analyze", "--file", &path]);
    assert_eq!(back.code, 0, "{}", back.stderr);
    assert_eq!(back.json()["input"]["digest"], d["result"]["digest"]);

    let r = moments(&["transform", "--generator", "hermite", "--op", "shift", "--c", "-1/2"]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.json()["result"]["moments"][1]["value"], "-1/2");
}

#[test]
fn validation_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.json", "{\n  \"kind\": \"stieltjes\",\n  \"moments\": [\"1\",\n    \"1\", \"two\"]\n}\n");
    let r = moments(&["analyze", "--file", &bad]);
    assert_eq!(r.code, 2);
    let e = &r.json()["error"];
    assert_eq!(e["code"], "SchemaError");
    assert_eq!(e["field"], "moments[2]");
    assert_eq!(e["line"], 4);

    let cases: &[&[&str]] = &[
        &["frobnicate", "--generator", "laguerre"],
        &["classify", "--generator", "laguerre", "--format", "csv"],
        &["analyze", "--generator", "laguerre", "--precision", "32"],
        &["analyze", "--generator", "laguerre", "--x", "1"],
        &["pade", "--generator", "laguerre", "--shapes", "0,4"],
        &["pade", "--generator", "laguerre", "--x", "-1"],
        &["nevanlinna", "--generator", "laguerre", "--z", "1,-1"],
        &["transform", "--generator", "laguerre", "--op", "shift"],
        &["transform", "--generator", "hermite", "--op", "index-shift", "--ell", "1"],
        &["analyze", "--generator", "cauchy"],
        &["jacobi", "--generator", "laguerre", "--terms", "6", "--depth", "9"],
        &["analyze", "--file", "/nonexistent/moments.json"],
        &["analyze"],
    ];
    for args in cases {
        let r = moments(args);
        assert_eq!(r.code, 2, "{args:?}: {}", r.stderr);
        if !r.stdout.is_empty() {
            assert_eq!(r.json()["error"]["class"], "validation", "{args:?}");
        }
    }
}

#[test]
fn numerical_failure_exits_3() {
    let r = moments(&["quadrature", "--generator", "lognormal", "--precision", "64", "--depth", "10"]);
    assert_eq!(r.code, 3, "{}", r.stdout);
    assert_eq!(r.json()["error"]["class"], "numerical");
}
