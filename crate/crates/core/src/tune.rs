//! Parameter tuning: first-peak detection, `s` scans, the `θ` diagnostic,
//! return-amplitude scans and a sinusoid fit for trace regularity.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::evolve::{return_amplitude, run_search, MarkedSet, StopRule, WalkParams};
use crate::lattice::LatticeConfig;

/// Fraction of the running maximum the probability must fall below.
pub const PEAK_DROP_FRACTION: f64 = 0.5;
/// Queries that must have elapsed since the running maximum.
pub const PEAK_LAG: usize = 10;
/// Resolution at which scan refinement stops.
pub const S_RESOLUTION: f64 = 1e-4;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeakResult {
    /// Peak probability.
    pub p: f64,
    /// Query index at which the peak occurs.
    pub t2: usize,
    pub valid: bool,
}

impl PeakResult {
    pub fn invalid() -> Self {
        PeakResult {
            p: 0.0,
            t2: 0,
            valid: false,
        }
    }
}

/// Streaming first-peak detector.
///
/// The running maximum is accepted as the first peak once the probability
/// has dropped below half of it with at least [`PEAK_LAG`] queries elapsed
/// since it was reached. Ties keep the earlier query.
#[derive(Debug, Clone, Copy)]
pub struct PeakTracker {
    max: f64,
    t_max: usize,
    seen: usize,
    found: Option<PeakResult>,
}

impl Default for PeakTracker {
    fn default() -> Self {
        Self::new()
    }
}

impl PeakTracker {
    pub fn new() -> Self {
        PeakTracker {
            max: f64::NEG_INFINITY,
            t_max: 0,
            seen: 0,
            found: None,
        }
    }

    pub fn push(&mut self, t2: usize, p: f64) {
        self.seen += 1;
        if self.found.is_some() {
            return;
        }
        if p > self.max {
            self.max = p;
            self.t_max = t2;
            return;
        }
        if p < PEAK_DROP_FRACTION * self.max && t2 >= self.t_max + PEAK_LAG && self.seen >= 3 {
            self.found = Some(PeakResult {
                p: self.max,
                t2: self.t_max,
                valid: true,
            });
        }
    }

    pub fn is_done(&self) -> bool {
        self.found.is_some()
    }

    pub fn result(&self) -> PeakResult {
        self.found.unwrap_or_else(PeakResult::invalid)
    }
}

/// First-cycle peak of a probability series; `probs[i]` is the value after
/// query `i + 1`.
pub fn detect_first_peak(probs: &[f64]) -> PeakResult {
    if probs.len() < 3 {
        return PeakResult::invalid();
    }
    let mut tracker = PeakTracker::new();
    for (i, &p) in probs.iter().enumerate() {
        tracker.push(i + 1, p);
        if tracker.is_done() {
            break;
        }
    }
    tracker.result()
}

/// `θ = √2 t1 asin(s)`.
pub fn theta(s: f64, t1: usize) -> f64 {
    std::f64::consts::SQRT_2 * t1 as f64 * s.asin()
}

/// Query cost after amplitude amplification, `t2 / √P`.
pub fn effective_queries(p: f64, t2: usize) -> Result<f64> {
    if p.is_nan() || p <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "peak probability must be positive, got {p}"
        )));
    }
    Ok(t2 as f64 / p.sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScanSample {
    pub s: f64,
    pub peak: PeakResult,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanResult {
    /// Every evaluated point, sorted by `s`.
    pub samples: Vec<ScanSample>,
    pub best_s: f64,
    pub best: PeakResult,
    pub theta: f64,
}

/// Options shared by both scans.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanOptions {
    /// Query budget per search run; `None` means `⌈3 √N⌉`.
    pub max_queries: Option<usize>,
    /// Refinement stops once the grid spacing is at most this.
    pub resolution: f64,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            max_queries: None,
            resolution: S_RESOLUTION,
        }
    }
}

/// Every evaluated `(s, value)` pair and the best one.
type Refined<T> = (Vec<(f64, T)>, Option<(f64, T)>);

fn check_range(s_lo: f64, s_hi: f64, step: f64, resolution: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&s_lo) || !(0.0..=1.0).contains(&s_hi) || s_lo > s_hi {
        return Err(Error::InvalidParameter(format!(
            "scan range [{s_lo}, {s_hi}] must satisfy 0 <= lo <= hi <= 1"
        )));
    }
    if step.is_nan() || step <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "scan step must be positive, got {step}"
        )));
    }
    if resolution.is_nan() || resolution <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "scan resolution must be positive, got {resolution}"
        )));
    }
    Ok(())
}

fn grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    let mut points: Vec<f64> = (0..=count).map(|i| lo + i as f64 * step).collect();
    if let Some(&last) = points.last() {
        if hi - last > 1e-12 {
            points.push(hi);
        }
    }
    points
}

/// Grid-then-refine search over `s` for the point minimising `score`.
///
/// Starting from a coarse grid on `[lo, hi]`, each round shrinks the
/// spacing tenfold on `best ± old spacing`, until the spacing reaches
/// `resolution`. Evaluations are memoised by `s`.
fn refine<T: Copy>(
    lo: f64,
    hi: f64,
    coarse_step: f64,
    resolution: f64,
    mut eval: impl FnMut(f64) -> Result<T>,
    better: impl Fn(f64, &T, f64, &T) -> bool,
) -> Result<Refined<T>> {
    let mut cache: HashMap<u64, (f64, T)> = HashMap::new();
    let mut best: Option<(f64, T)> = None;
    let mut step = coarse_step;
    let mut points = grid(lo, hi, step);
    let single = points.len() == 1;
    loop {
        for s in points {
            let key = (s * 1e9).round() as u64;
            let value = match cache.get(&key) {
                Some(&(_, v)) => v,
                None => {
                    let v = eval(s)?;
                    cache.insert(key, (s, v));
                    v
                }
            };
            best = match best {
                Some((bs, bv)) if !better(s, &value, bs, &bv) => Some((bs, bv)),
                _ => Some((s, value)),
            };
        }
        if single || step <= resolution * (1.0 + 1e-9) {
            break;
        }
        let Some((centre, _)) = best else { break };
        let fine = step / 10.0;
        let a = (centre - step).max(lo);
        let b = (centre + step).min(hi);
        let first = centre - ((centre - a) / fine + 1e-9).floor() * fine;
        points = grid(first, b, fine);
        step = fine;
    }
    let mut samples: Vec<(f64, T)> = cache.into_values().collect();
    samples.sort_by(|x, y| x.0.total_cmp(&y.0));
    Ok((samples, best))
}

/// Scans `s` for the largest first-cycle peak probability, breaking ties
/// toward fewer queries and then smaller `s`.
pub fn scan_s(
    cfg: &LatticeConfig,
    t1: usize,
    marked: &MarkedSet,
    s_lo: f64,
    s_hi: f64,
    coarse_step: f64,
) -> Result<ScanResult> {
    scan_s_with(
        cfg,
        t1,
        marked,
        s_lo,
        s_hi,
        coarse_step,
        ScanOptions::default(),
    )
}

pub fn scan_s_with(
    cfg: &LatticeConfig,
    t1: usize,
    marked: &MarkedSet,
    s_lo: f64,
    s_hi: f64,
    coarse_step: f64,
    opts: ScanOptions,
) -> Result<ScanResult> {
    let (samples, best) = scan_s_samples(cfg, t1, marked, s_lo, s_hi, coarse_step, opts)?;
    match best {
        Some(best) => Ok(ScanResult {
            samples,
            best_s: best.s,
            best: best.peak,
            theta: theta(best.s, t1),
        }),
        None => {
            let max_queries = opts
                .max_queries
                .unwrap_or_else(|| StopRule::default_budget(cfg));
            Err(Error::NoPeak(format!(
                "no valid peak for any s in [{s_lo}, {s_hi}] within {max_queries} queries"
            )))
        }
    }
}

/// The scan behind [`scan_s_with`], returning every evaluated sample and
/// the best valid one, if any, instead of failing when none is valid.
pub fn scan_s_samples(
    cfg: &LatticeConfig,
    t1: usize,
    marked: &MarkedSet,
    s_lo: f64,
    s_hi: f64,
    coarse_step: f64,
    opts: ScanOptions,
) -> Result<(Vec<ScanSample>, Option<ScanSample>)> {
    check_range(s_lo, s_hi, coarse_step, opts.resolution)?;
    let max_queries = opts
        .max_queries
        .unwrap_or_else(|| StopRule::default_budget(cfg));
    let eval = |s: f64| -> Result<PeakResult> {
        let params = WalkParams::new(s, t1)?;
        let (_, outcome) = run_search(cfg, &params, marked, StopRule::FirstPeak { max_queries })?;
        Ok(outcome.peak)
    };
    let better = |s: f64, a: &PeakResult, bs: f64, b: &PeakResult| -> bool {
        match (a.valid, b.valid) {
            (true, false) => true,
            (false, _) => false,
            (true, true) => a.p > b.p || (a.p == b.p && (a.t2 < b.t2 || (a.t2 == b.t2 && s < bs))),
        }
    };
    let (samples, best) = refine(s_lo, s_hi, coarse_step, opts.resolution, eval, better)?;
    let samples = samples
        .into_iter()
        .map(|(s, peak)| ScanSample { s, peak })
        .collect();
    let best = best
        .filter(|(_, p)| p.valid)
        .map(|(s, peak)| ScanSample { s, peak });
    Ok((samples, best))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReturnAmplitudeScan {
    /// Every evaluated `(s, A(t1))`, sorted by `s`.
    pub samples: Vec<(f64, f64)>,
    pub best_s: f64,
    pub min_amplitude: f64,
}

/// Minimises `A(t1)` over `s` with the same grid refinement as [`scan_s`].
pub fn scan_return_amplitude(
    cfg: &LatticeConfig,
    t1: usize,
    s_lo: f64,
    s_hi: f64,
    coarse_step: f64,
) -> Result<ReturnAmplitudeScan> {
    scan_return_amplitude_with(cfg, t1, s_lo, s_hi, coarse_step, ScanOptions::default())
}

pub fn scan_return_amplitude_with(
    cfg: &LatticeConfig,
    t1: usize,
    s_lo: f64,
    s_hi: f64,
    coarse_step: f64,
    opts: ScanOptions,
) -> Result<ReturnAmplitudeScan> {
    check_range(s_lo, s_hi, coarse_step, opts.resolution)?;
    let eval = |s: f64| return_amplitude(cfg, &WalkParams::new(s, t1)?);
    let better = |s: f64, a: &f64, bs: f64, b: &f64| *a < *b || (*a == *b && s < bs);
    let (samples, best) = refine(s_lo, s_hi, coarse_step, opts.resolution, eval, better)?;
    let (best_s, min_amplitude) = best.expect("grid is never empty");
    Ok(ReturnAmplitudeScan {
        samples,
        best_s,
        min_amplitude,
    })
}

/// Least-squares fit of `P sin²(ω (t + φ))` to a probability series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SinusoidFit {
    pub amplitude: f64,
    pub omega: f64,
    pub phase: f64,
    /// `‖y - fit‖₂ / ‖y‖₂`.
    pub relative_residual: f64,
}

fn sinusoid_amplitude(ts: &[f64], ys: &[f64], omega: f64, phase: f64) -> (f64, f64) {
    // Best amplitude is linear given (ω, φ).
    let (mut num, mut den) = (0.0, 0.0);
    for (&t, &y) in ts.iter().zip(ys) {
        let g = (omega * (t + phase)).sin().powi(2);
        num += g * y;
        den += g * g;
    }
    let amp = if den > 0.0 { num / den } else { 0.0 };
    let sse: f64 = ts
        .iter()
        .zip(ys)
        .map(|(&t, &y)| {
            let r = y - amp * (omega * (t + phase)).sin().powi(2);
            r * r
        })
        .sum();
    (amp, sse)
}

fn golden_min(mut a: f64, mut b: f64, f: impl Fn(f64) -> f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..80 {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        }
    }
    (a + b) / 2.0
}

/// Fits `P sin²(ω (t + φ))` to `probs[i]` at `t = i + 1`.
///
/// `ω` is seeded from the detected first peak (`ω ≈ π / (2 t_peak)`),
/// scanned over ±20% of the seed and polished by golden-section search; for
/// each `ω` the phase is profiled out the same way and `P` solved linearly.
pub fn fit_sinusoid(probs: &[f64]) -> Result<SinusoidFit> {
    let peak = detect_first_peak(probs);
    if !peak.valid {
        return Err(Error::NoPeak(
            "cannot seed a sinusoid fit without a first peak".into(),
        ));
    }
    let ts: Vec<f64> = (1..=probs.len()).map(|t| t as f64).collect();
    let omega0 = std::f64::consts::FRAC_PI_2 / peak.t2 as f64;

    let best_phase = |omega: f64| -> (f64, f64) {
        let period = std::f64::consts::PI / omega;
        let sse = |phase: f64| sinusoid_amplitude(&ts, probs, omega, phase).1;
        let (coarse, _) = (0..64)
            .map(|k| -period / 2.0 + period * k as f64 / 64.0)
            .map(|p| (p, sse(p)))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("nonempty");
        let phase = golden_min(coarse - period / 64.0, coarse + period / 64.0, sse);
        (phase, sse(phase))
    };

    const STEPS: usize = 400;
    let (lo, hi) = (0.8 * omega0, 1.2 * omega0);
    let h = (hi - lo) / STEPS as f64;
    let (coarse, _) = (0..=STEPS)
        .map(|k| lo + k as f64 * h)
        .map(|w| (w, best_phase(w).1))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("nonempty");
    let omega = golden_min(coarse - h, coarse + h, |w| best_phase(w).1);
    let (phase, _) = best_phase(omega);
    let (amplitude, residual) = sinusoid_amplitude(&ts, probs, omega, phase);
    let norm: f64 = probs.iter().map(|y| y * y).sum();
    Ok(SinusoidFit {
        amplitude,
        omega,
        phase,
        relative_residual: (residual / norm).sqrt(),
    })
}
