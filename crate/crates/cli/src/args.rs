use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use stagwalk::fitting::FitModel;
use stagwalk::VertexCoords;

#[derive(Debug, Parser)]
#[command(
    name = "stagwalk",
    version,
    about = "Staggered-walk spatial search on periodic hypercubic lattices"
)]
pub struct Cli {
    /// Worker threads for the block kernel (default: available parallelism).
    #[arg(long, global = true, value_name = "K")]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one search and record the marked probability after every query.
    Search(SearchArgs),
    /// Scan the mixing parameter s for the largest first peak.
    #[command(name = "scan-s")]
    ScanS(ScanArgs),
    /// Return amplitude A(t1) at one s, or minimised over an s range.
    #[command(name = "return-amp")]
    ReturnAmp(ReturnAmpArgs),
    /// Least-squares scaling fits over a results CSV.
    Fit(FitArgs),
    /// Rerun a reference table and compare.
    Reproduce(ReproduceArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct LatticeArgs {
    /// Lattice dimension.
    #[arg(long)]
    pub d: usize,
    /// Lattice side (even, at least 4).
    #[arg(long = "L", value_name = "L")]
    #[serde(rename = "L")]
    pub side: usize,
}

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[command(flatten)]
    pub lattice: LatticeArgs,
    /// Mixing parameter s = sin(√d τ / 2), in [0, 1].
    #[arg(long)]
    pub s: f64,
    /// Walk steps per oracle query.
    #[arg(long, default_value_t = 3)]
    pub t1: usize,
    /// Marked vertex as comma-separated coordinates; repeatable.
    /// Defaults to the origin.
    #[arg(long, value_name = "X,Y,..", value_parser = parse_coords)]
    pub marked: Vec<VertexCoords>,
    /// Query budget (default ⌈3√N⌉).
    #[arg(long)]
    pub max_queries: Option<usize>,
    /// Run the whole budget instead of stopping after the first peak.
    #[arg(long)]
    pub no_stop: bool,
    /// Trace CSV path (`-` for stdout).
    #[arg(long, value_name = "FILE")]
    pub trace: Option<PathBuf>,
    /// Summary JSON path (default: stdout).
    #[arg(long, value_name = "FILE")]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub lattice: LatticeArgs,
    /// Walk steps per oracle query.
    #[arg(long, default_value_t = 3)]
    pub t1: usize,
    /// Marked vertex; repeatable. Defaults to the origin.
    #[arg(long, value_name = "X,Y,..", value_parser = parse_coords)]
    pub marked: Vec<VertexCoords>,
    /// Lower end of the coarse grid.
    #[arg(long, default_value_t = 0.05)]
    pub s_min: f64,
    /// Upper end of the coarse grid.
    #[arg(long, default_value_t = 1.0)]
    pub s_max: f64,
    /// Coarse grid spacing.
    #[arg(long, default_value_t = 0.05)]
    pub step: f64,
    /// Refine until the spacing is at most this.
    #[arg(long, default_value_t = stagwalk::tune::S_RESOLUTION)]
    pub resolution: f64,
    /// Query budget per search (default ⌈3√N⌉).
    #[arg(long)]
    pub max_queries: Option<usize>,
    /// Scan CSV path (`-` for stdout).
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,
    /// Summary JSON path (default: stdout).
    #[arg(long, value_name = "FILE")]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ReturnAmpArgs {
    #[command(flatten)]
    pub lattice: LatticeArgs,
    /// Walk steps per oracle query.
    #[arg(long, default_value_t = 3)]
    pub t1: usize,
    /// Evaluate at this s only. Without it, scan [s-min, s-max].
    #[arg(long, conflicts_with_all = ["s_min", "s_max", "step", "csv"])]
    pub s: Option<f64>,
    /// Start vertex (default: origin).
    #[arg(long, value_name = "X,Y,..", value_parser = parse_coords, requires = "s")]
    pub start: Option<VertexCoords>,
    #[arg(long, default_value_t = 0.0)]
    pub s_min: f64,
    #[arg(long, default_value_t = 1.0)]
    pub s_max: f64,
    /// Coarse grid spacing for the scan.
    #[arg(long, default_value_t = 0.02)]
    pub step: f64,
    /// Refine until the spacing is at most this.
    #[arg(long, default_value_t = stagwalk::tune::S_RESOLUTION)]
    pub resolution: f64,
    /// Scan CSV path (`-` for stdout).
    #[arg(long, value_name = "FILE")]
    pub csv: Option<PathBuf>,
    /// Summary JSON path (default: stdout).
    #[arg(long, value_name = "FILE")]
    pub summary: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModelArg {
    /// P and t2/√N against 1/L per (s, t1, d).
    #[value(name = "inverse-L")]
    InverseL,
    /// log2 of the asymptotic coefficients against d.
    #[value(name = "log2-d")]
    Log2D,
    /// a2/√a1 against 1/d.
    #[value(name = "inverse-d")]
    InverseD,
    /// t2/√(NP) against 1/d per lattice side.
    #[value(name = "fixed-L")]
    FixedL,
}

impl From<ModelArg> for FitModel {
    fn from(m: ModelArg) -> Self {
        match m {
            ModelArg::InverseL => FitModel::InverseL,
            ModelArg::Log2D => FitModel::Log2VsD,
            ModelArg::InverseD => FitModel::InverseD,
            ModelArg::FixedL => FitModel::FixedL,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct FitArgs {
    /// Results CSV with columns d,L,s,t1,P,t2.
    #[arg(long, value_name = "FILE")]
    pub input: PathBuf,
    /// Fit model.
    #[arg(long, value_enum)]
    pub model: ModelArg,
    /// Report CSV path (default: stdout).
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Report JSON path.
    #[arg(long, value_name = "FILE")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
pub enum TableArg {
    /// Optimal s, peak P and t2, θ and A(t1) per (d, L, t1).
    #[value(name = "1")]
    Tuning,
    /// Finite-size fits of P and t2/√N against 1/L.
    #[value(name = "2")]
    Scaling,
    /// Several marked vertices on 64³.
    #[value(name = "5")]
    MultiTarget,
}

#[derive(Debug, Clone, Args)]
pub struct ReproduceArgs {
    /// Reference table to rerun.
    #[arg(long, value_enum)]
    pub table: TableArg,
    /// Run every row, including sizes beyond desk scale.
    #[arg(long)]
    pub full: bool,
    /// Steps per query for the scaling table.
    #[arg(long, default_value_t = 3)]
    pub t1: usize,
    /// Write the raw scaling-table runs as a `d,L,s,t1,P,t2` CSV.
    #[arg(long, value_name = "FILE")]
    pub samples: Option<PathBuf>,
    /// Report CSV path (default: stdout).
    #[arg(long, value_name = "FILE")]
    pub output: Option<PathBuf>,
    /// Report JSON path.
    #[arg(long, value_name = "FILE")]
    pub json: Option<PathBuf>,
}

/// Parses `x,y,z` (parentheses optional).
pub fn parse_coords(text: &str) -> Result<VertexCoords, String> {
    let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
    if inner.is_empty() {
        return Err("empty coordinate list".into());
    }
    inner
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .map_err(|e| format!("bad coordinate {x:?}: {e}"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(VertexCoords::new)
}
