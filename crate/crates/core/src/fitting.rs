//! Least-squares scaling analysis of search results.
//!
//! Finite-size behaviour at fixed dimension is fit as `P = a1 + b1 / L`
//! and `t2 / √N = a2 + b2 / L`; the asymptotic coefficients are then fit
//! against dimension as `log2 a = c + k d` and `a2 / √a1 = c + k / d`.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Query prefactor of optimal unstructured search, `π/4`.
pub const GROVER_CONSTANT: f64 = std::f64::consts::FRAC_PI_4;

/// Lattices this small are left out of finite-size fits.
pub const EXCLUDED_SIDE: usize = 4;

/// From this dimension on, data are too sparse for `1/L` fits.
pub const FIRST_UNFITTED_DIM: usize = 8;

/// One measured search result.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalingSample {
    pub d: usize,
    #[serde(rename = "L")]
    pub side: usize,
    pub s: f64,
    pub t1: usize,
    #[serde(rename = "P")]
    pub p: f64,
    pub t2: usize,
}

impl ScalingSample {
    pub fn volume(&self) -> f64 {
        (self.side as f64).powi(self.d as i32)
    }

    pub fn t2_over_sqrt_n(&self) -> f64 {
        self.t2 as f64 / self.volume().sqrt()
    }

    pub fn t2_over_sqrt_np(&self) -> f64 {
        self.t2 as f64 / (self.volume() * self.p).sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FitModel {
    /// Plain `y = a + b x`.
    #[serde(rename = "linear")]
    Linear,
    /// `y = a + b / L`.
    #[serde(rename = "inverse-L")]
    InverseL,
    /// `log2 y = a + b d`.
    #[serde(rename = "log2-d")]
    Log2VsD,
    /// `y = a + b / d`.
    #[serde(rename = "inverse-d")]
    InverseD,
    /// `t2 / √(NP) = a + b / d` at one lattice side.
    #[serde(rename = "fixed-L")]
    FixedL,
}

impl FitModel {
    pub fn tag(self) -> &'static str {
        match self {
            FitModel::Linear => "linear",
            FitModel::InverseL => "inverse-L",
            FitModel::Log2VsD => "log2-d",
            FitModel::InverseD => "inverse-d",
            FitModel::FixedL => "fixed-L",
        }
    }
}

impl fmt::Display for FitModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub model: FitModel,
    pub intercept: f64,
    pub slope: f64,
    /// Root-mean-square residual over the fitted points.
    pub rms: f64,
    pub points: usize,
}

impl FitResult {
    pub fn predict(&self, x: f64) -> f64 {
        self.intercept + self.slope * x
    }
}

/// Ordinary least squares for `y = a + b x`.
pub fn fit_linear(xs: &[f64], ys: &[f64]) -> Result<FitResult> {
    fit_tagged(FitModel::Linear, xs, ys)
}

fn fit_tagged(model: FitModel, xs: &[f64], ys: &[f64]) -> Result<FitResult> {
    if xs.len() != ys.len() {
        return Err(Error::DegenerateFit(format!(
            "{} predictors but {} responses",
            xs.len(),
            ys.len()
        )));
    }
    let n = xs.len() as f64;
    if xs.len() < 2 {
        return Err(Error::DegenerateFit("need at least two points".into()));
    }
    let mean_x = xs.iter().sum::<f64>() / n;
    let mean_y = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    if sxx <= f64::EPSILON * mean_x.abs().max(1.0) * n {
        return Err(Error::DegenerateFit(
            "all predictor values are equal".into(),
        ));
    }
    let sxy: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let slope = sxy / sxx;
    let intercept = mean_y - slope * mean_x;
    let sse: f64 = xs
        .iter()
        .zip(ys)
        .map(|(x, y)| (y - intercept - slope * x).powi(2))
        .sum();
    Ok(FitResult {
        model,
        intercept,
        slope,
        rms: (sse / n).sqrt(),
        points: xs.len(),
    })
}

fn same_s(a: f64, b: f64) -> bool {
    (a - b).abs() < 1e-9
}

fn finite_size_points(
    samples: &[ScalingSample],
    d: usize,
    t1: usize,
    s: f64,
) -> Result<Vec<&ScalingSample>> {
    if d >= FIRST_UNFITTED_DIM {
        return Err(Error::DegenerateFit(format!(
            "finite-size fits are limited to d < {FIRST_UNFITTED_DIM}, got d = {d}"
        )));
    }
    let points: Vec<&ScalingSample> = samples
        .iter()
        .filter(|x| x.d == d && x.t1 == t1 && same_s(x.s, s) && x.side != EXCLUDED_SIDE)
        .collect();
    let mut sides: Vec<usize> = points.iter().map(|x| x.side).collect();
    sides.sort_unstable();
    sides.dedup();
    if sides.len() < 2 {
        return Err(Error::DegenerateFit(format!(
            "need at least two lattice sizes for d={d}, t1={t1}, s={s}; have {sides:?}"
        )));
    }
    Ok(points)
}

/// `P = a1 + b1 / L` at fixed `(d, t1, s)`.
pub fn fit_p_vs_l(samples: &[ScalingSample], d: usize, t1: usize, s: f64) -> Result<FitResult> {
    let pts = finite_size_points(samples, d, t1, s)?;
    let xs: Vec<f64> = pts.iter().map(|x| 1.0 / x.side as f64).collect();
    let ys: Vec<f64> = pts.iter().map(|x| x.p).collect();
    fit_tagged(FitModel::InverseL, &xs, &ys)
}

/// `t2 / √N = a2 + b2 / L` at fixed `(d, t1, s)`.
pub fn fit_t2_vs_l(samples: &[ScalingSample], d: usize, t1: usize, s: f64) -> Result<FitResult> {
    let pts = finite_size_points(samples, d, t1, s)?;
    let xs: Vec<f64> = pts.iter().map(|x| 1.0 / x.side as f64).collect();
    let ys: Vec<f64> = pts.iter().map(|x| x.t2_over_sqrt_n()).collect();
    fit_tagged(FitModel::InverseL, &xs, &ys)
}

/// `log2 a = c + k d` over `(d, a)` pairs.
pub fn fit_dimension_scaling(by_dim: &[(usize, f64)]) -> Result<FitResult> {
    if let Some(&(d, a)) = by_dim.iter().find(|(_, a)| a.is_nan() || *a <= 0.0) {
        return Err(Error::DegenerateFit(format!(
            "coefficient at d={d} is not positive: {a}"
        )));
    }
    let xs: Vec<f64> = by_dim.iter().map(|&(d, _)| d as f64).collect();
    let ys: Vec<f64> = by_dim.iter().map(|&(_, a)| a.log2()).collect();
    fit_tagged(FitModel::Log2VsD, &xs, &ys)
}

/// `a2 / √a1 = c + k / d` over `(d, ratio)` pairs.
pub fn fit_ratio_vs_inverse_d(by_dim: &[(usize, f64)]) -> Result<FitResult> {
    let xs: Vec<f64> = by_dim.iter().map(|&(d, _)| 1.0 / d as f64).collect();
    let ys: Vec<f64> = by_dim.iter().map(|&(_, r)| r).collect();
    fit_tagged(FitModel::InverseD, &xs, &ys)
}

/// `t2 / √(NP) = a + b / d` over samples with lattice side `side` and the
/// given `t1`.
pub fn fit_queries_vs_inverse_d_at_fixed_l(
    samples: &[ScalingSample],
    side: usize,
    t1: usize,
) -> Result<FitResult> {
    let pts: Vec<&ScalingSample> = samples
        .iter()
        .filter(|x| x.side == side && x.t1 == t1)
        .collect();
    let xs: Vec<f64> = pts.iter().map(|x| 1.0 / x.d as f64).collect();
    let ys: Vec<f64> = pts.iter().map(|x| x.t2_over_sqrt_np()).collect();
    fit_tagged(FitModel::FixedL, &xs, &ys)
}

/// Asymptotic coefficients for one `(s, t1, d)` group.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalingRow {
    pub s: f64,
    pub t1: usize,
    pub d: usize,
    pub sides: Vec<usize>,
    pub a1: f64,
    /// `None` when the group is averaged rather than fit in `1/L`.
    pub b1: Option<f64>,
    pub rms1: f64,
    pub a2: f64,
    pub b2: Option<f64>,
    pub rms2: f64,
    /// `a2 / √a1`, the effective-query prefactor.
    pub ratio: f64,
    /// `ratio / (π/4)`.
    pub ratio_to_grover: f64,
}

/// `a2 / √a1`: the `√N` prefactor of `t2 / √P`.
pub fn effective_prefactor(a1: f64, a2: f64) -> f64 {
    a2 / a1.sqrt()
}

fn mean_and_rms(ys: &[f64]) -> (f64, f64) {
    let n = ys.len() as f64;
    let mean = ys.iter().sum::<f64>() / n;
    let rms = (ys.iter().map(|y| (y - mean).powi(2)).sum::<f64>() / n).sqrt();
    (mean, rms)
}

/// Groups samples by `(s, t1, d)` and extracts `a1, b1, a2, b2`.
///
/// Groups with `d >= 8` or only one usable size are averaged instead of
/// fit (no slope). `L = 4` samples are ignored.
pub fn scaling_table(samples: &[ScalingSample]) -> Vec<ScalingRow> {
    let mut keys: Vec<(usize, f64, usize)> = Vec::new();
    for x in samples.iter().filter(|x| x.side != EXCLUDED_SIDE) {
        if !keys
            .iter()
            .any(|&(t1, s, d)| t1 == x.t1 && same_s(s, x.s) && d == x.d)
        {
            keys.push((x.t1, x.s, x.d));
        }
    }
    keys.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)).then(a.2.cmp(&b.2)));

    keys.into_iter()
        .map(|(t1, s, d)| {
            let group: Vec<&ScalingSample> = samples
                .iter()
                .filter(|x| x.t1 == t1 && same_s(x.s, s) && x.d == d && x.side != EXCLUDED_SIDE)
                .collect();
            let mut sides: Vec<usize> = group.iter().map(|x| x.side).collect();
            sides.sort_unstable();
            sides.dedup();
            let fitted = (
                fit_p_vs_l(samples, d, t1, s),
                fit_t2_vs_l(samples, d, t1, s),
            );
            let (a1, b1, rms1, a2, b2, rms2) = match fitted {
                (Ok(f1), Ok(f2)) => (
                    f1.intercept,
                    Some(f1.slope),
                    f1.rms,
                    f2.intercept,
                    Some(f2.slope),
                    f2.rms,
                ),
                _ => {
                    let ps: Vec<f64> = group.iter().map(|x| x.p).collect();
                    let qs: Vec<f64> = group.iter().map(|x| x.t2_over_sqrt_n()).collect();
                    let (a1, rms1) = mean_and_rms(&ps);
                    let (a2, rms2) = mean_and_rms(&qs);
                    (a1, None, rms1, a2, None, rms2)
                }
            };
            let ratio = effective_prefactor(a1, a2);
            ScalingRow {
                s,
                t1,
                d,
                sides,
                a1,
                b1,
                rms1,
                a2,
                b2,
                rms2,
                ratio,
                ratio_to_grover: ratio / GROVER_CONSTANT,
            }
        })
        .collect()
}
