use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use stagwalk::evolve::{return_amplitude_at, SearchTrace};
use stagwalk::export::{
    fmt_float, write_return_amplitude_csv, write_scan_samples_csv, write_trace_csv,
    write_trace_csv_per_vertex,
};
use stagwalk::fitting::{self, FitModel, FitResult, ScalingSample, GROVER_CONSTANT};
use stagwalk::reference;
use stagwalk::tune::{self, ScanOptions};
use stagwalk::{run_search, LatticeConfig, MarkedSet, StopRule, VertexCoords, WalkParams};

use crate::args::*;
use crate::reproduce;
use crate::Failure;

/// Largest tolerated `|‖ψ‖² − 1|` over a run.
pub const NORM_TOLERANCE: f64 = 1e-10;

type Outcome = Result<(), Failure>;

/// Runs one parsed command line on a dedicated thread pool.
pub fn run(cli: Cli) -> Outcome {
    let threads = match cli.threads {
        Some(0) => return Err(Failure::Usage("--threads must be at least 1".into())),
        Some(k) => k,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Failure::Usage(format!("cannot start {threads} threads: {e}")))?;
    pool.install(|| match cli.command {
        Command::Search(a) => search(a, threads),
        Command::ScanS(a) => scan_s(a, threads),
        Command::ReturnAmp(a) => return_amp(a, threads),
        Command::Fit(a) => fit(a),
        Command::Reproduce(a) => reproduce(a),
    })
}

fn create(path: &Path) -> Result<Box<dyn Write>, Failure> {
    if path == Path::new("-") {
        return Ok(Box::new(io::stdout().lock()));
    }
    let file =
        File::create(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(Box::new(BufWriter::new(file)))
}

fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    create(path.unwrap_or(Path::new("-")))
}

fn write_json<T: Serialize>(path: Option<&Path>, value: &T) -> Outcome {
    let mut w = sink(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn write_table(path: Option<&Path>, header: &[&str], rows: &[Vec<String>]) -> Outcome {
    let mut w = csv::Writer::from_writer(sink(path)?);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

fn opt_float(x: Option<f64>) -> String {
    x.map(fmt_float).unwrap_or_default()
}

fn join<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(";")
}

fn lattice(a: &LatticeArgs) -> Result<LatticeConfig, Failure> {
    Ok(LatticeConfig::new(a.d, a.side)?)
}

fn marked_or_origin(cfg: &LatticeConfig, coords: Vec<VertexCoords>) -> Vec<VertexCoords> {
    if coords.is_empty() {
        vec![VertexCoords::origin(cfg.dim())]
    } else {
        coords
    }
}

fn check_norm(trace: &SearchTrace) -> Outcome {
    let drift = trace.max_norm_error();
    if drift > NORM_TOLERANCE {
        return Err(Failure::Numerical(format!(
            "norm drift {drift:e} exceeds {NORM_TOLERANCE:e}"
        )));
    }
    Ok(())
}

#[derive(Debug, Serialize)]
struct SearchConfig {
    d: usize,
    #[serde(rename = "L")]
    side: usize,
    s: f64,
    t1: usize,
    marked: Vec<VertexCoords>,
    max_queries: usize,
    stop: &'static str,
    threads: usize,
}

#[derive(Debug, Serialize)]
struct VertexPeak {
    vertex: VertexCoords,
    #[serde(rename = "P")]
    p: Option<f64>,
    t2: Option<usize>,
    valid: bool,
}

#[derive(Debug, Serialize)]
struct SearchSummary {
    #[serde(flatten)]
    config: SearchConfig,
    valid: bool,
    #[serde(rename = "P")]
    p: Option<f64>,
    t2: Option<usize>,
    effective_queries: Option<f64>,
    per_vertex: Vec<VertexPeak>,
    queries_run: usize,
    max_norm_error: f64,
}

fn search(a: SearchArgs, threads: usize) -> Outcome {
    let cfg = lattice(&a.lattice)?;
    let params = WalkParams::new(a.s, a.t1)?;
    let coords = marked_or_origin(&cfg, a.marked);
    let marked = MarkedSet::from_coords(&cfg, &coords)?;
    let max_queries = a
        .max_queries
        .unwrap_or_else(|| StopRule::default_budget(&cfg));
    let stop = if a.no_stop {
        StopRule::Queries(max_queries)
    } else {
        StopRule::FirstPeak { max_queries }
    };
    let (trace, outcome) = run_search(&cfg, &params, &marked, stop)?;

    if let Some(path) = &a.trace {
        let mut w = create(path)?;
        if marked.len() > 1 {
            write_trace_csv_per_vertex(&mut w, &trace)?;
        } else {
            write_trace_csv(&mut w, &trace)?;
        }
        w.flush()?;
    }

    let per_vertex = coords
        .iter()
        .zip(&outcome.per_vertex)
        .map(|(v, r)| VertexPeak {
            vertex: v.clone(),
            p: r.valid.then_some(r.p),
            t2: r.valid.then_some(r.t2),
            valid: r.valid,
        })
        .collect();
    let summary = SearchSummary {
        config: SearchConfig {
            d: cfg.dim(),
            side: cfg.side(),
            s: a.s,
            t1: a.t1,
            marked: coords,
            max_queries,
            stop: if a.no_stop { "fixed" } else { "first-peak" },
            threads,
        },
        valid: outcome.peak.valid,
        p: outcome.peak.valid.then_some(outcome.peak.p),
        t2: outcome.peak.valid.then_some(outcome.peak.t2),
        effective_queries: outcome.effective_queries,
        per_vertex,
        queries_run: trace.len(),
        max_norm_error: trace.max_norm_error(),
    };
    write_json(a.summary.as_deref(), &summary)?;
    check_norm(&trace)
}

#[derive(Debug, Serialize)]
struct ScanConfig {
    d: usize,
    #[serde(rename = "L")]
    side: usize,
    t1: usize,
    marked: Vec<VertexCoords>,
    s_min: f64,
    s_max: f64,
    step: f64,
    resolution: f64,
    max_queries: usize,
    threads: usize,
}

#[derive(Debug, Serialize)]
struct ScanSummary {
    #[serde(flatten)]
    config: ScanConfig,
    valid: bool,
    best_s: Option<f64>,
    #[serde(rename = "P")]
    p: Option<f64>,
    t2: Option<usize>,
    theta: Option<f64>,
    effective_queries: Option<f64>,
    evaluations: usize,
}

fn scan_s(a: ScanArgs, threads: usize) -> Outcome {
    let cfg = lattice(&a.lattice)?;
    let coords = marked_or_origin(&cfg, a.marked);
    let marked = MarkedSet::from_coords(&cfg, &coords)?;
    let opts = ScanOptions {
        max_queries: a.max_queries,
        resolution: a.resolution,
    };
    WalkParams::new(0.0, a.t1)?;
    let (samples, best) =
        tune::scan_s_samples(&cfg, a.t1, &marked, a.s_min, a.s_max, a.step, opts)?;

    if let Some(path) = &a.csv {
        let mut w = create(path)?;
        write_scan_samples_csv(&mut w, &samples, a.t1)?;
        w.flush()?;
    }
    let summary = ScanSummary {
        config: ScanConfig {
            d: cfg.dim(),
            side: cfg.side(),
            t1: a.t1,
            marked: coords,
            s_min: a.s_min,
            s_max: a.s_max,
            step: a.step,
            resolution: a.resolution,
            max_queries: a
                .max_queries
                .unwrap_or_else(|| StopRule::default_budget(&cfg)),
            threads,
        },
        valid: best.is_some(),
        best_s: best.as_ref().map(|b| b.s),
        p: best.as_ref().map(|b| b.peak.p),
        t2: best.as_ref().map(|b| b.peak.t2),
        theta: best.as_ref().map(|b| tune::theta(b.s, a.t1)),
        effective_queries: best
            .as_ref()
            .and_then(|b| tune::effective_queries(b.peak.p, b.peak.t2).ok()),
        evaluations: samples.len(),
    };
    write_json(a.summary.as_deref(), &summary)
}

#[derive(Debug, Serialize)]
struct AmplitudeSummary {
    d: usize,
    #[serde(rename = "L")]
    side: usize,
    t1: usize,
    threads: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    start: Option<VertexCoords>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    s_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    step: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    resolution: Option<f64>,
    /// `A(t1)` at `s`, or the minimum over the scan.
    #[serde(rename = "A")]
    a: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    best_s: Option<f64>,
    theta: f64,
    lower_bound: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    evaluations: Option<usize>,
}

fn check_bound(cfg: &LatticeConfig, s: f64, a: f64) -> Outcome {
    let lower = -1.0 + 2.0 / cfg.volume() as f64;
    if a < lower - 1e-12 || a > 1.0 + 1e-12 {
        return Err(Failure::Numerical(format!(
            "A = {a} at s = {s} lies outside [{lower}, 1]"
        )));
    }
    Ok(())
}

fn return_amp(a: ReturnAmpArgs, threads: usize) -> Outcome {
    let cfg = lattice(&a.lattice)?;
    let lower_bound = -1.0 + 2.0 / cfg.volume() as f64;
    let mut summary = AmplitudeSummary {
        d: cfg.dim(),
        side: cfg.side(),
        t1: a.t1,
        threads,
        start: None,
        s: None,
        s_min: None,
        s_max: None,
        step: None,
        resolution: None,
        a: 0.0,
        best_s: None,
        theta: 0.0,
        lower_bound,
        evaluations: None,
    };
    if let Some(s) = a.s {
        let start = a.start.unwrap_or_else(|| VertexCoords::origin(cfg.dim()));
        let v = cfg.vertex_index(&start)?;
        let value = return_amplitude_at(&cfg, &WalkParams::new(s, a.t1)?, v)?;
        summary.start = Some(start);
        summary.s = Some(s);
        summary.a = value;
        summary.theta = tune::theta(s, a.t1);
        write_json(a.summary.as_deref(), &summary)?;
        return check_bound(&cfg, s, value);
    }
    if a.start.is_some() {
        return Err(Failure::Usage("--start needs --s".into()));
    }
    WalkParams::new(0.0, a.t1)?;
    let opts = ScanOptions {
        max_queries: None,
        resolution: a.resolution,
    };
    let scan = tune::scan_return_amplitude_with(&cfg, a.t1, a.s_min, a.s_max, a.step, opts)?;
    if let Some(path) = &a.csv {
        let mut w = create(path)?;
        write_return_amplitude_csv(&mut w, &scan, a.t1)?;
        w.flush()?;
    }
    summary.s_min = Some(a.s_min);
    summary.s_max = Some(a.s_max);
    summary.step = Some(a.step);
    summary.resolution = Some(a.resolution);
    summary.a = scan.min_amplitude;
    summary.best_s = Some(scan.best_s);
    summary.theta = tune::theta(scan.best_s, a.t1);
    summary.evaluations = Some(scan.samples.len());
    write_json(a.summary.as_deref(), &summary)?;
    for &(s, value) in &scan.samples {
        check_bound(&cfg, s, value)?;
    }
    Ok(())
}

/// Reads a results CSV with columns `d,L,s,t1,P,t2`.
pub fn read_samples(path: &Path) -> Result<Vec<ScalingSample>, Failure> {
    let mut r = csv::Reader::from_path(path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let samples = r
        .deserialize()
        .collect::<Result<Vec<ScalingSample>, _>>()
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    if samples.is_empty() {
        return Err(Failure::Usage(format!("{}: no samples", path.display())));
    }
    Ok(samples)
}

pub fn write_samples(path: &Path, samples: &[ScalingSample]) -> Outcome {
    let rows: Vec<Vec<String>> = samples
        .iter()
        .map(|x| {
            vec![
                x.d.to_string(),
                x.side.to_string(),
                fmt_float(x.s),
                x.t1.to_string(),
                fmt_float(x.p),
                x.t2.to_string(),
            ]
        })
        .collect();
    write_table(Some(path), &["d", "L", "s", "t1", "P", "t2"], &rows)
}

/// A fit over dimensions for one `(s, t1)` group, or over `1/d` at one side.
#[derive(Debug, Clone, Serialize)]
pub struct GroupFit {
    pub s: Option<f64>,
    pub t1: usize,
    #[serde(rename = "L", skip_serializing_if = "Option::is_none")]
    pub side: Option<usize>,
    pub quantity: &'static str,
    pub dims: Vec<usize>,
    pub fit: FitResult,
}

/// Dimensions entering the `log2-d` and `inverse-d` fits.
pub const DIMENSION_FIT_RANGE: std::ops::RangeInclusive<usize> = 3..=8;

/// Fits `samples` with `model`. Groups too small to fit are skipped.
pub fn fit_groups(samples: &[ScalingSample], model: FitModel) -> Result<Vec<GroupFit>, Failure> {
    let mut out = Vec::new();
    match model {
        FitModel::Log2VsD | FitModel::InverseD => {
            let table = fitting::scaling_table(samples);
            let mut groups: Vec<(usize, f64)> = Vec::new();
            for r in &table {
                if !groups.iter().any(|&(t1, s)| t1 == r.t1 && s == r.s) {
                    groups.push((r.t1, r.s));
                }
            }
            for (t1, s) in groups {
                let rows: Vec<_> = table
                    .iter()
                    .filter(|r| r.t1 == t1 && r.s == s && DIMENSION_FIT_RANGE.contains(&r.d))
                    .collect();
                let dims: Vec<usize> = rows.iter().map(|r| r.d).collect();
                let series: Vec<(&'static str, Vec<(usize, f64)>)> = if model == FitModel::Log2VsD {
                    vec![
                        ("a1", rows.iter().map(|r| (r.d, r.a1)).collect()),
                        ("a2", rows.iter().map(|r| (r.d, r.a2)).collect()),
                    ]
                } else {
                    vec![("ratio", rows.iter().map(|r| (r.d, r.ratio)).collect())]
                };
                for (quantity, by_dim) in series {
                    let fit = if model == FitModel::Log2VsD {
                        fitting::fit_dimension_scaling(&by_dim)
                    } else {
                        fitting::fit_ratio_vs_inverse_d(&by_dim)
                    };
                    if let Ok(fit) = fit {
                        out.push(GroupFit {
                            s: Some(s),
                            t1,
                            side: None,
                            quantity,
                            dims: dims.clone(),
                            fit,
                        });
                    }
                }
            }
        }
        FitModel::FixedL => {
            let mut keys: Vec<(usize, usize)> = samples.iter().map(|x| (x.t1, x.side)).collect();
            keys.sort_unstable();
            keys.dedup();
            for (t1, side) in keys {
                let mut dims: Vec<usize> = samples
                    .iter()
                    .filter(|x| x.t1 == t1 && x.side == side)
                    .map(|x| x.d)
                    .collect();
                dims.sort_unstable();
                dims.dedup();
                if let Ok(fit) = fitting::fit_queries_vs_inverse_d_at_fixed_l(samples, side, t1) {
                    out.push(GroupFit {
                        s: None,
                        t1,
                        side: Some(side),
                        quantity: "t2/sqrt(NP)",
                        dims,
                        fit,
                    });
                }
            }
        }
        FitModel::InverseL | FitModel::Linear => unreachable!("handled by the scaling table"),
    }
    if out.is_empty() {
        return Err(Failure::Numerical(format!(
            "no group in the input can be fit with {model}"
        )));
    }
    Ok(out)
}

#[derive(Debug, Serialize)]
struct FitReport<'a, T> {
    input: &'a Path,
    model: FitModel,
    results: &'a [T],
}

fn fit(a: FitArgs) -> Outcome {
    let samples = read_samples(&a.input)?;
    let model = FitModel::from(a.model);
    if model == FitModel::InverseL {
        let table = fitting::scaling_table(&samples);
        if table.is_empty() {
            return Err(Failure::Numerical(
                "no usable samples (all at L = 4?)".into(),
            ));
        }
        let rows: Vec<Vec<String>> = table
            .iter()
            .map(|r| {
                vec![
                    fmt_float(r.s),
                    r.t1.to_string(),
                    r.d.to_string(),
                    join(&r.sides),
                    fmt_float(r.a1),
                    opt_float(r.b1),
                    fmt_float(r.rms1),
                    fmt_float(r.a2),
                    opt_float(r.b2),
                    fmt_float(r.rms2),
                    fmt_float(r.ratio),
                    fmt_float(r.ratio_to_grover),
                ]
            })
            .collect();
        let header = [
            "s",
            "t1",
            "d",
            "L",
            "a1",
            "b1",
            "rms1",
            "a2",
            "b2",
            "rms2",
            "ratio",
            "ratio_to_grover",
        ];
        write_table(a.output.as_deref(), &header, &rows)?;
        if let Some(path) = &a.json {
            write_json(
                Some(path),
                &FitReport {
                    input: &a.input,
                    model,
                    results: &table,
                },
            )?;
        }
        return Ok(());
    }
    let fits = fit_groups(&samples, model)?;
    let rows: Vec<Vec<String>> = fits
        .iter()
        .map(|g| {
            vec![
                opt_float(g.s),
                g.t1.to_string(),
                g.side.map(|l| l.to_string()).unwrap_or_default(),
                g.quantity.to_string(),
                join(&g.dims),
                fmt_float(g.fit.intercept),
                fmt_float(g.fit.slope),
                fmt_float(g.fit.rms),
                g.fit.points.to_string(),
            ]
        })
        .collect();
    let header = [
        "s",
        "t1",
        "L",
        "quantity",
        "d",
        "intercept",
        "slope",
        "rms",
        "points",
    ];
    write_table(a.output.as_deref(), &header, &rows)?;
    if let Some(path) = &a.json {
        write_json(
            Some(path),
            &FitReport {
                input: &a.input,
                model,
                results: &fits,
            },
        )?;
    }
    Ok(())
}

/// One compared quantity in a reproduction report.
#[derive(Debug, Clone, Serialize)]
pub struct Comparison {
    pub row: String,
    pub quantity: String,
    pub reference: f64,
    pub computed: Option<f64>,
    pub tolerance: String,
    pub pass: bool,
}

impl Comparison {
    fn new(
        row: &str,
        quantity: &str,
        reference: f64,
        computed: Option<f64>,
        tolerance: &str,
        pass: bool,
    ) -> Self {
        Comparison {
            row: row.to_string(),
            quantity: quantity.to_string(),
            reference,
            computed,
            tolerance: tolerance.to_string(),
            pass,
        }
    }
}

pub fn tuning_comparisons(c: &reproduce::TuningCheck) -> Vec<Comparison> {
    let row = format!("d={} L={} t1={}", c.d, c.side, c.t1);
    let valid = |x: f64| c.valid.then_some(x);
    vec![
        Comparison::new(&row, "P", c.p_ref, valid(c.p), "1%", c.p_ok()),
        Comparison::new(
            &row,
            "t2",
            c.t2_ref as f64,
            valid(c.t2 as f64),
            "±1",
            c.t2_ok(),
        ),
        Comparison::new(
            &row,
            "theta",
            c.theta_ref,
            Some(c.theta),
            "±0.01",
            c.theta_ok(),
        ),
        Comparison::new(&row, "A", c.a_ref, Some(c.a), "±0.002", c.a_ok()),
    ]
}

pub fn scaling_comparisons(c: &reproduce::ScalingCheck) -> Vec<Comparison> {
    let row = format!("d={} t1={} L={}", c.d, c.t1, join(&c.sides));
    let lo = GROVER_CONSTANT;
    let hi = 1.3 * GROVER_CONSTANT;
    vec![
        Comparison::new(&row, "a1", c.a1_ref, Some(c.a1), "5%", c.a1_ok()),
        Comparison::new(&row, "a2", c.a2_ref, Some(c.a2), "5%", c.a2_ok()),
        Comparison::new(
            &row,
            "a2/sqrt(a1)",
            c.ratio_ref,
            Some(c.ratio),
            "[pi/4, 1.3 pi/4]",
            (lo..=hi).contains(&c.ratio),
        ),
    ]
}

pub fn line_comparisons(c: &reproduce::LineCheck) -> Vec<Comparison> {
    let row = format!("d={} L={}", c.d, c.side);
    let ok = |x: f64, r: f64| (x - r).abs() <= reproduce::LINE_TOLERANCE * r.abs();
    vec![
        Comparison::new(
            &row,
            "P",
            c.p_line,
            Some(c.p),
            "2% of fitted line",
            ok(c.p, c.p_line),
        ),
        Comparison::new(
            &row,
            "t2/sqrt(N)",
            c.t2_line,
            Some(c.t2_over_sqrt_n),
            "2% of fitted line",
            ok(c.t2_over_sqrt_n, c.t2_line),
        ),
    ]
}

pub fn multi_target_comparisons(c: &reproduce::MultiTargetCheck) -> Vec<Comparison> {
    let row = c
        .marked
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ");
    let mut out = Vec::new();
    for (k, v) in c.marked.iter().enumerate() {
        let p_ok = (c.p[k] - c.p_ref[k]).abs() <= reproduce::MULTI_P_TOLERANCE * c.p_ref[k];
        let t_ok = c.t2[k].abs_diff(c.t2_ref[k]) <= reproduce::MULTI_T2_TOLERANCE;
        out.push(Comparison::new(
            &row,
            &format!("P{v}"),
            c.p_ref[k],
            Some(c.p[k]),
            "5%",
            c.valid && p_ok,
        ));
        out.push(Comparison::new(
            &row,
            &format!("t2{v}"),
            c.t2_ref[k] as f64,
            Some(c.t2[k] as f64),
            "±2",
            c.valid && t_ok,
        ));
    }
    out
}

#[derive(Debug, Serialize)]
struct ReproduceReport<'a> {
    table: TableArg,
    full: bool,
    t1: usize,
    passed: usize,
    total: usize,
    comparisons: &'a [Comparison],
}

fn progress(items: &[Comparison]) {
    for c in items {
        let computed = c
            .computed
            .map(|x| format!("{x:.6}"))
            .unwrap_or_else(|| "-".into());
        eprintln!(
            "{:<32} {:<16} ref {:<10.6} got {:<12} {}",
            c.row,
            c.quantity,
            c.reference,
            computed,
            if c.pass { "pass" } else { "FAIL" }
        );
    }
}

fn reproduce(a: ReproduceArgs) -> Outcome {
    let mut comparisons = Vec::new();
    match a.table {
        TableArg::Tuning => {
            for row in reproduce::tuning_rows(a.full) {
                let items = tuning_comparisons(&reproduce::check_tuning_row(row)?);
                progress(&items);
                comparisons.extend(items);
            }
        }
        TableArg::Scaling => {
            let plans = reproduce::scaling_plans(a.t1, a.full);
            if plans.is_empty() {
                return Err(Failure::Usage(format!(
                    "no reference rows for t1 = {}",
                    a.t1
                )));
            }
            let mut all_samples = Vec::new();
            for plan in plans {
                let samples = reproduce::run_scaling_plan(&plan)?;
                all_samples.extend_from_slice(&samples);
                let reference =
                    reference::scaling_row(plan.t1, plan.d).expect("plan comes from the table");
                let items = if plan.d == 3 && !a.full {
                    samples
                        .iter()
                        .flat_map(|x| {
                            line_comparisons(&reproduce::check_against_line(reference, x))
                        })
                        .collect()
                } else {
                    reproduce::check_scaling(reference, &samples)
                        .map(|c| scaling_comparisons(&c))
                        .unwrap_or_default()
                };
                progress(&items);
                comparisons.extend(items);
            }
            if let Some(path) = &a.samples {
                write_samples(path, &all_samples)?;
            }
        }
        TableArg::MultiTarget => {
            for row in &reference::MULTI_TARGET {
                let items = multi_target_comparisons(&reproduce::check_multi_target(row)?);
                progress(&items);
                comparisons.extend(items);
            }
        }
    }
    let rows: Vec<Vec<String>> = comparisons
        .iter()
        .map(|c| {
            vec![
                c.row.clone(),
                c.quantity.clone(),
                fmt_float(c.reference),
                opt_float(c.computed),
                c.tolerance.clone(),
                c.pass.to_string(),
            ]
        })
        .collect();
    write_table(
        a.output.as_deref(),
        &[
            "row",
            "quantity",
            "reference",
            "computed",
            "tolerance",
            "pass",
        ],
        &rows,
    )?;
    if let Some(path) = &a.json {
        let report = ReproduceReport {
            table: a.table,
            full: a.full,
            t1: a.t1,
            passed: comparisons.iter().filter(|c| c.pass).count(),
            total: comparisons.len(),
            comparisons: &comparisons,
        };
        write_json(Some(path.as_path()), &report)?;
    }
    Ok(())
}
