//! Recipes that rerun the reference tables and compare against the
//! tabulated values.

use serde::Serialize;
use stagwalk::evolve::return_amplitude;
use stagwalk::fitting::{self, ScalingSample};
use stagwalk::reference::{self, MultiTargetRow, ScalingRow, TuningRow};
use stagwalk::tune::{theta, PeakResult};
use stagwalk::{run_search, LatticeConfig, MarkedSet, Result, StopRule, VertexCoords, WalkParams};

/// Relative tolerance on a tuned peak probability.
pub const P_TOLERANCE: f64 = 0.01;
/// Absolute tolerance on a query count.
pub const T2_TOLERANCE: usize = 1;
pub const AMPLITUDE_TOLERANCE: f64 = 0.002;
pub const THETA_TOLERANCE: f64 = 0.01;
/// Relative tolerance on fitted asymptotic coefficients.
pub const COEFFICIENT_TOLERANCE: f64 = 0.05;
/// Relative tolerance when checking single sizes against a fitted line.
pub const LINE_TOLERANCE: f64 = 0.02;
/// Largest side used for `d = 3` unless a full run is requested.
pub const DESK_SIDE_D3: usize = 128;

fn within_rel(value: f64, expected: f64, tol: f64) -> bool {
    (value - expected).abs() <= tol * expected.abs()
}

/// Runs a search from the origin with the default query budget.
pub fn search_peak(cfg: &LatticeConfig, s: f64, t1: usize) -> Result<PeakResult> {
    let params = WalkParams::new(s, t1)?;
    let marked = MarkedSet::single(cfg, 0)?;
    let stop = StopRule::FirstPeak {
        max_queries: StopRule::default_budget(cfg),
    };
    Ok(run_search(cfg, &params, &marked, stop)?.1.peak)
}

#[derive(Debug, Clone, Serialize)]
pub struct TuningCheck {
    pub d: usize,
    #[serde(rename = "L")]
    pub side: usize,
    pub t1: usize,
    pub s: f64,
    pub p_ref: f64,
    pub p: f64,
    pub t2_ref: usize,
    pub t2: usize,
    pub valid: bool,
    pub theta_ref: f64,
    pub theta: f64,
    pub walk_s: f64,
    pub a_ref: f64,
    pub a: f64,
}

impl TuningCheck {
    pub fn p_ok(&self) -> bool {
        self.valid && within_rel(self.p, self.p_ref, P_TOLERANCE)
    }

    pub fn t2_ok(&self) -> bool {
        self.valid && self.t2.abs_diff(self.t2_ref) <= T2_TOLERANCE
    }

    pub fn theta_ok(&self) -> bool {
        (self.theta - self.theta_ref).abs() <= THETA_TOLERANCE
    }

    pub fn a_ok(&self) -> bool {
        (self.a - self.a_ref).abs() <= AMPLITUDE_TOLERANCE
    }

    pub fn passed(&self) -> bool {
        self.p_ok() && self.t2_ok() && self.theta_ok() && self.a_ok()
    }
}

/// Table rows run by default: every `t1 = 3` row. `full` selects all rows.
pub fn tuning_rows(full: bool) -> Vec<&'static TuningRow> {
    reference::TUNING
        .iter()
        .filter(|r| full || r.t1 == 3)
        .collect()
}

/// Searches at the tabulated `s` and evaluates `A(t1)` at the tabulated
/// walk-optimal `s`.
pub fn check_tuning_row(row: &TuningRow) -> Result<TuningCheck> {
    let cfg = LatticeConfig::new(row.d, row.side)?;
    let peak = search_peak(&cfg, row.s, row.t1)?;
    let a = return_amplitude(&cfg, &WalkParams::new(row.walk_s, row.t1)?)?;
    Ok(TuningCheck {
        d: row.d,
        side: row.side,
        t1: row.t1,
        s: row.s,
        p_ref: row.p,
        p: peak.p,
        t2_ref: row.t2,
        t2: peak.t2,
        valid: peak.valid,
        theta_ref: row.theta,
        theta: theta(row.s, row.t1),
        walk_s: row.walk_s,
        a_ref: row.min_return_amplitude,
        a,
    })
}

/// One finite-size series: a lattice dimension and the sides to run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingPlan {
    pub d: usize,
    pub t1: usize,
    pub s: f64,
    pub sides: Vec<usize>,
}

/// Series for the tabulated rows at `t1`. The desk-scale selection keeps
/// `4 <= d <= 7` and `d = 3` up to `L = 128`; `full` runs every row.
pub fn scaling_plans(t1: usize, full: bool) -> Vec<ScalingPlan> {
    reference::SCALING
        .iter()
        .filter(|r| r.t1 == t1)
        .filter(|r| full || r.d < fitting::FIRST_UNFITTED_DIM)
        .map(|r| {
            let sides = if r.d == 3 && !full {
                [64, DESK_SIDE_D3].to_vec()
            } else {
                r.sides.to_vec()
            };
            ScalingPlan {
                d: r.d,
                t1: r.t1,
                s: r.s,
                sides,
            }
        })
        .collect()
}

pub fn run_scaling_plan(plan: &ScalingPlan) -> Result<Vec<ScalingSample>> {
    plan.sides
        .iter()
        .map(|&side| {
            let cfg = LatticeConfig::new(plan.d, side)?;
            let peak = search_peak(&cfg, plan.s, plan.t1)?;
            if !peak.valid {
                return Err(stagwalk::Error::NoPeak(format!(
                    "d={} L={side} s={} t1={}",
                    plan.d, plan.s, plan.t1
                )));
            }
            Ok(ScalingSample {
                d: plan.d,
                side,
                s: plan.s,
                t1: plan.t1,
                p: peak.p,
                t2: peak.t2,
            })
        })
        .collect()
}

/// Fitted coefficients for one series next to the tabulated ones.
#[derive(Debug, Clone, Serialize)]
pub struct ScalingCheck {
    pub d: usize,
    pub t1: usize,
    pub sides: Vec<usize>,
    pub a1_ref: f64,
    pub a1: f64,
    pub b1: Option<f64>,
    pub rms1: f64,
    pub a2_ref: f64,
    pub a2: f64,
    pub b2: Option<f64>,
    pub rms2: f64,
    pub ratio_ref: f64,
    pub ratio: f64,
}

impl ScalingCheck {
    pub fn a1_ok(&self) -> bool {
        within_rel(self.a1, self.a1_ref, COEFFICIENT_TOLERANCE)
    }

    pub fn a2_ok(&self) -> bool {
        within_rel(self.a2, self.a2_ref, COEFFICIENT_TOLERANCE)
    }

    pub fn passed(&self) -> bool {
        self.a1_ok() && self.a2_ok()
    }
}

pub fn check_scaling(reference: &ScalingRow, samples: &[ScalingSample]) -> Option<ScalingCheck> {
    let row = fitting::scaling_table(samples)
        .into_iter()
        .find(|r| r.d == reference.d && r.t1 == reference.t1)?;
    Some(ScalingCheck {
        d: row.d,
        t1: row.t1,
        sides: row.sides,
        a1_ref: reference.a1,
        a1: row.a1,
        b1: row.b1,
        rms1: row.rms1,
        a2_ref: reference.a2,
        a2: row.a2,
        b2: row.b2,
        rms2: row.rms2,
        ratio_ref: reference.ratio,
        ratio: row.ratio,
    })
}

/// One size compared against the tabulated finite-size lines
/// `P = a1 + b1/L` and `t2/√N = a2 + b2/L`.
#[derive(Debug, Clone, Serialize)]
pub struct LineCheck {
    pub d: usize,
    #[serde(rename = "L")]
    pub side: usize,
    pub p: f64,
    pub p_line: f64,
    pub t2_over_sqrt_n: f64,
    pub t2_line: f64,
}

impl LineCheck {
    pub fn passed(&self) -> bool {
        within_rel(self.p, self.p_line, LINE_TOLERANCE)
            && within_rel(self.t2_over_sqrt_n, self.t2_line, LINE_TOLERANCE)
    }
}

pub fn check_against_line(reference: &ScalingRow, sample: &ScalingSample) -> LineCheck {
    let inv = 1.0 / sample.side as f64;
    LineCheck {
        d: sample.d,
        side: sample.side,
        p: sample.p,
        p_line: reference.a1 + reference.b1.unwrap_or(0.0) * inv,
        t2_over_sqrt_n: sample.t2_over_sqrt_n(),
        t2_line: reference.a2 + reference.b2.unwrap_or(0.0) * inv,
    }
}

/// Per-vertex peaks for one multi-target configuration.
#[derive(Debug, Clone, Serialize)]
pub struct MultiTargetCheck {
    pub marked: Vec<VertexCoords>,
    pub p_ref: Vec<f64>,
    pub p: Vec<f64>,
    pub t2_ref: Vec<usize>,
    pub t2: Vec<usize>,
    pub valid: bool,
}

/// Relative tolerance on per-vertex probabilities in the multi-target
/// comparison.
pub const MULTI_P_TOLERANCE: f64 = 0.05;
pub const MULTI_T2_TOLERANCE: usize = 2;

impl MultiTargetCheck {
    pub fn passed(&self) -> bool {
        self.valid
            && self
                .p
                .iter()
                .zip(&self.p_ref)
                .all(|(&p, &r)| within_rel(p, r, MULTI_P_TOLERANCE))
            && self
                .t2
                .iter()
                .zip(&self.t2_ref)
                .all(|(&t, &r)| t.abs_diff(r) <= MULTI_T2_TOLERANCE)
    }
}

pub fn multi_target_config() -> Result<(LatticeConfig, WalkParams)> {
    Ok((
        LatticeConfig::new(3, reference::MULTI_TARGET_SIDE)?,
        WalkParams::new(reference::S_FOR_T1_3, 3)?,
    ))
}

pub fn check_multi_target(row: &MultiTargetRow) -> Result<MultiTargetCheck> {
    let (cfg, params) = multi_target_config()?;
    let marked: Vec<VertexCoords> = row
        .marked
        .iter()
        .map(|c| VertexCoords::new(c.to_vec()))
        .collect();
    let set = MarkedSet::from_coords(&cfg, &marked)?;
    let stop = StopRule::FirstPeak {
        max_queries: StopRule::default_budget(&cfg),
    };
    let (_, outcome) = run_search(&cfg, &params, &set, stop)?;
    Ok(MultiTargetCheck {
        marked,
        p_ref: row.p.to_vec(),
        p: outcome.per_vertex.iter().map(|r| r.p).collect(),
        t2_ref: row.t2.to_vec(),
        t2: outcome.per_vertex.iter().map(|r| r.t2).collect(),
        valid: outcome.per_vertex.iter().all(|r| r.valid),
    })
}
