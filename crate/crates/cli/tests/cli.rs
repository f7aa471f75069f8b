use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn stagwalk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_stagwalk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_owned()
}

/// Every float field has the form `d.ddddddddde±x`.
fn assert_ten_digits(field: &str) {
    let (mantissa, _) = field.split_once('e').unwrap_or_else(|| panic!("{field}"));
    let digits = mantissa.trim_start_matches('-').replace('.', "");
    assert_eq!(digits.len(), 10, "{field}");
}

#[test]
fn search_writes_trace_and_summary() {
    let dir = TempDir::new().unwrap();
    let (trace, summary) = (path(&dir, "trace.csv"), path(&dir, "summary.json"));
    let out = stagwalk(&[
        "search",
        "--d",
        "3",
        "--L",
        "16",
        "--s",
        "0.7071",
        "--t1",
        "3",
        "--trace",
        &trace,
        "--summary",
        &summary,
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));

    let text = std::fs::read_to_string(&trace).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t2,prob,norm_err"));
    let first: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(first[0], "1");
    assert_ten_digits(first[1]);
    assert_ten_digits(first[2]);

    let s = json(Path::new(&summary));
    for key in [
        "d",
        "L",
        "s",
        "t1",
        "marked",
        "max_queries",
        "stop",
        "threads",
        "valid",
        "P",
        "t2",
    ] {
        assert!(s.get(key).is_some(), "missing {key}");
    }
    assert_eq!(s["L"], 16);
    assert_eq!(s["valid"], true);
    assert_eq!(s["marked"], serde_json::json!([[0, 0, 0]]));
    assert_eq!(
        s["queries_run"].as_u64().unwrap() as usize,
        text.lines().count() - 1
    );
}

#[test]
fn zero_mixing_leaves_the_trace_flat() {
    let dir = TempDir::new().unwrap();
    let trace = path(&dir, "trace.csv");
    let out = stagwalk(&[
        "search",
        "--d",
        "3",
        "--L",
        "8",
        "--s",
        "0",
        "--no-stop",
        "--max-queries",
        "40",
        "--trace",
        &trace,
        "--summary",
        &path(&dir, "s.json"),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&trace).unwrap();
    let probs: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(probs.len(), 40);
    assert!(probs.iter().all(|&p| (p - 1.0 / 512.0).abs() < 1e-15));
}

#[test]
fn repeated_marked_vertices_get_their_own_columns() {
    let dir = TempDir::new().unwrap();
    let (trace, summary) = (path(&dir, "trace.csv"), path(&dir, "s.json"));
    let out = stagwalk(&[
        "search",
        "--d",
        "2",
        "--L",
        "16",
        "--s",
        "0.9",
        "--t1",
        "2",
        "--marked",
        "0,0",
        "--marked",
        "(8,8)",
        "--trace",
        &trace,
        "--summary",
        &summary,
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&trace).unwrap();
    assert_eq!(text.lines().next(), Some("t2,prob,norm_err,prob_0,prob_1"));
    let s = json(Path::new(&summary));
    assert_eq!(s["per_vertex"].as_array().unwrap().len(), 2);
}

#[test]
fn usage_errors_exit_with_one() {
    let cases: [&[&str]; 6] = [
        &["search", "--d", "3", "--L", "7", "--s", "0.5"],
        &["search", "--d", "3", "--L", "8"],
        &[
            "search", "--d", "3", "--L", "8", "--s", "0.5", "--marked", "1,2",
        ],
        &["search", "--d", "3", "--L", "8", "--s", "1.5"],
        &[
            "--threads",
            "0",
            "search",
            "--d",
            "3",
            "--L",
            "8",
            "--s",
            "0.5",
        ],
        &[
            "fit",
            "--input",
            "/nonexistent/samples.csv",
            "--model",
            "inverse-L",
        ],
    ];
    for args in cases {
        let out = stagwalk(args);
        assert_eq!(code(&out), 1, "{args:?}");
        assert!(!out.stderr.is_empty());
    }
    assert_eq!(code(&stagwalk(&["--help"])), 0);
}

#[test]
fn scan_without_a_peak_is_not_an_error() {
    let dir = TempDir::new().unwrap();
    let (csv, summary) = (path(&dir, "scan.csv"), path(&dir, "s.json"));
    let out = stagwalk(&[
        "scan-s",
        "--d",
        "3",
        "--L",
        "8",
        "--s-min",
        "0",
        "--s-max",
        "0",
        "--max-queries",
        "20",
        "--csv",
        &csv,
        "--summary",
        &summary,
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let s = json(Path::new(&summary));
    assert_eq!(s["valid"], false);
    assert!(s["best_s"].is_null());
    assert_eq!(s["evaluations"], 1);
}

#[test]
fn scan_finds_the_tabulated_optimum() {
    let dir = TempDir::new().unwrap();
    let (csv, summary) = (path(&dir, "scan.csv"), path(&dir, "s.json"));
    let out = stagwalk(&[
        "scan-s",
        "--d",
        "3",
        "--L",
        "32",
        "--s-min",
        "0.6",
        "--s-max",
        "0.8",
        "--step",
        "0.05",
        "--csv",
        &csv,
        "--summary",
        &summary,
    ]);
    assert_eq!(code(&out), 0);
    let s = json(Path::new(&summary));
    assert!((s["best_s"].as_f64().unwrap() - 0.70).abs() <= 0.01);
    assert!(s["t2"].as_u64().unwrap().abs_diff(55) <= 1);
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next(), Some("s,P,t2,theta"));
}

#[test]
fn return_amplitude_at_the_walk_optimum() {
    let dir = TempDir::new().unwrap();
    let summary = path(&dir, "a.json");
    let out = stagwalk(&[
        "return-amp",
        "--d",
        "3",
        "--L",
        "32",
        "--s",
        "0.6737",
        "--summary",
        &summary,
    ]);
    assert_eq!(code(&out), 0);
    let s = json(Path::new(&summary));
    assert!((s["A"].as_f64().unwrap() + 0.7618).abs() < 0.002);
    assert!(s["A"].as_f64().unwrap() >= s["lower_bound"].as_f64().unwrap());

    let moved = path(&dir, "b.json");
    let out = stagwalk(&[
        "return-amp",
        "--d",
        "3",
        "--L",
        "32",
        "--s",
        "0.6737",
        "--start",
        "3,1,4",
        "--summary",
        &moved,
    ]);
    assert_eq!(code(&out), 0);
    assert!(
        (json(Path::new(&moved))["A"].as_f64().unwrap() - s["A"].as_f64().unwrap()).abs() < 1e-12
    );
}

#[test]
fn return_amplitude_scan_writes_every_grid_point() {
    let dir = TempDir::new().unwrap();
    let (csv, summary) = (path(&dir, "a.csv"), path(&dir, "a.json"));
    let out = stagwalk(&[
        "return-amp",
        "--d",
        "2",
        "--L",
        "16",
        "--t1",
        "3",
        "--step",
        "0.1",
        "--csv",
        &csv,
        "--summary",
        &summary,
    ]);
    assert_eq!(code(&out), 0);
    let s = json(Path::new(&summary));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(
        text.lines().count() - 1,
        s["evaluations"].as_u64().unwrap() as usize
    );
    assert!(s["best_s"].as_f64().is_some());
}

fn write_line_samples(path: &str) {
    // Points exactly on P = 0.05 + 0.1/L; t2 follows 0.2 + 0.5/L up to rounding.
    let mut w = String::from("d,L,s,t1,P,t2\n");
    for side in [16usize, 32, 48, 64] {
        let inv = 1.0 / side as f64;
        let t2 = ((0.2 + 0.5 * inv) * (side * side) as f64).round();
        w += &format!("4,{side},0.7071067812,3,{},{t2}\n", 0.05 + 0.1 * inv);
    }
    std::fs::write(path, w).unwrap();
}

#[test]
fn inverse_side_fit_recovers_the_line() {
    let dir = TempDir::new().unwrap();
    let (input, output, report) = (
        path(&dir, "in.csv"),
        path(&dir, "out.csv"),
        path(&dir, "fit.json"),
    );
    write_line_samples(&input);
    let out = stagwalk(&[
        "fit",
        "--input",
        &input,
        "--model",
        "inverse-L",
        "--output",
        &output,
        "--json",
        &report,
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&output).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("s,t1,d,L,a1,b1,rms1,a2,b2,rms2,ratio,ratio_to_grover")
    );
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(row[3], "16;32;48;64");
    assert!((row[4].parse::<f64>().unwrap() - 0.05).abs() < 1e-12);
    assert!((row[5].parse::<f64>().unwrap() - 0.1).abs() < 1e-10);
    assert!((row[7].parse::<f64>().unwrap() - 0.2).abs() < 1e-3);
    assert!(json(Path::new(&report))["results"].is_array());
}

#[test]
fn fit_with_nothing_to_fit_is_a_numerical_failure() {
    let dir = TempDir::new().unwrap();
    let input = path(&dir, "in.csv");
    std::fs::write(&input, "d,L,s,t1,P,t2\n3,4,0.7,3,0.2,5\n").unwrap();
    let out = stagwalk(&[
        "fit",
        "--input",
        &input,
        "--model",
        "inverse-L",
        "--output",
        &path(&dir, "o.csv"),
    ]);
    assert_eq!(code(&out), 2);
}

#[test]
fn dimension_fits_group_by_parameters() {
    let dir = TempDir::new().unwrap();
    let input = path(&dir, "in.csv");
    let mut w = String::from("d,L,s,t1,P,t2\n");
    for d in 3..=6usize {
        let a1 = 0.35 * 2f64.powf(-(d as f64));
        for side in [8usize, 12, 16] {
            let n = (side as f64).powi(d as i32);
            w += &format!(
                "{d},{side},0.7071067812,3,{a1},{}\n",
                (0.3 * n.sqrt()).round()
            );
        }
    }
    std::fs::write(&input, w).unwrap();
    let output = path(&dir, "out.csv");
    let out = stagwalk(&[
        "fit", "--input", &input, "--model", "log2-d", "--output", &output,
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(&output).unwrap();
    assert_eq!(
        text.lines().next(),
        Some("s,t1,L,quantity,d,intercept,slope,rms,points")
    );
    let a1 = text.lines().find(|l| l.contains(",a1,")).unwrap();
    let fields: Vec<&str> = a1.split(',').collect();
    // log2 a1 = log2 0.35 - d exactly.
    assert!((fields[5].parse::<f64>().unwrap() - 0.35f64.log2()).abs() < 1e-9);
    assert!((fields[6].parse::<f64>().unwrap() + 1.0).abs() < 1e-9);
}

#[test]
fn multi_target_reproduction_passes() {
    let dir = TempDir::new().unwrap();
    let (output, report) = (path(&dir, "t5.csv"), path(&dir, "t5.json"));
    let out = stagwalk(&[
        "reproduce",
        "--table",
        "5",
        "--output",
        &output,
        "--json",
        &report,
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&output).unwrap();
    assert_eq!(
        text.lines().next(),
        Some("row,quantity,reference,computed,tolerance,pass")
    );
    let r = json(Path::new(&report));
    assert_eq!(r["passed"], r["total"]);
}

#[test]
fn trace_is_identical_across_thread_counts() {
    let dir = TempDir::new().unwrap();
    let mut traces = Vec::new();
    for k in ["1", "3"] {
        let trace = path(&dir, &format!("t{k}.csv"));
        let out = stagwalk(&[
            "--threads",
            k,
            "search",
            "--d",
            "4",
            "--L",
            "8",
            "--s",
            "0.7",
            "--trace",
            &trace,
            "--summary",
            &path(&dir, "s.json"),
        ]);
        assert_eq!(code(&out), 0);
        traces.push(std::fs::read(&trace).unwrap());
    }
    assert_eq!(traces[0], traces[1]);
}
