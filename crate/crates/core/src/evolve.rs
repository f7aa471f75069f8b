//! State vectors and the block evolution kernel.
//!
//! A half-step applies the block rotation of one parity to every block of
//! that parity: gather the `2^d` member amplitudes in corner order,
//! multiply, scatter back. Blocks of one parity are disjoint, so the work
//! is split over slabs of two adjacent layers along the slowest axis and
//! run in parallel; every amplitude is written exactly once by the same
//! arithmetic regardless of scheduling, so results are bit-identical for
//! any thread count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dirac::{build_block_hamiltonian, mixing_cosine};
use crate::error::{Error, Result};
use crate::lattice::{LatticeConfig, Parity, VertexCoords};
use crate::tune::{PeakResult, PeakTracker};

/// Walk parameters: mixing amplitude `s` and walk steps per oracle query.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WalkParams {
    s: f64,
    c: f64,
    steps_per_query: usize,
}

impl WalkParams {
    pub fn new(s: f64, steps_per_query: usize) -> Result<Self> {
        let c = mixing_cosine(s)?;
        if steps_per_query == 0 {
            return Err(Error::InvalidParameter("t1 must be at least 1".into()));
        }
        Ok(WalkParams {
            s,
            c,
            steps_per_query,
        })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    /// Walk steps between oracle queries (`t1`).
    pub fn steps_per_query(&self) -> usize {
        self.steps_per_query
    }

    /// Time step `τ = 2 asin(s) / √d`.
    pub fn tau(&self, dim: usize) -> f64 {
        2.0 * self.s.asin() / (dim as f64).sqrt()
    }
}

/// Real amplitudes over all lattice vertices.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeField {
    cfg: LatticeConfig,
    amp: Vec<f64>,
}

impl AmplitudeField {
    /// The uniform superposition `|s>`.
    pub fn uniform(cfg: &LatticeConfig) -> Self {
        let n = cfg.volume();
        AmplitudeField {
            cfg: *cfg,
            amp: vec![1.0 / (n as f64).sqrt(); n],
        }
    }

    /// Unit amplitude at vertex `v`.
    pub fn point(cfg: &LatticeConfig, v: usize) -> Result<Self> {
        let n = cfg.volume();
        if v >= n {
            return Err(Error::IndexOutOfRange {
                index: v,
                volume: n,
            });
        }
        let mut amp = vec![0.0; n];
        amp[v] = 1.0;
        Ok(AmplitudeField { cfg: *cfg, amp })
    }

    pub fn from_vec(cfg: &LatticeConfig, amp: Vec<f64>) -> Result<Self> {
        if amp.len() != cfg.volume() {
            return Err(Error::InvalidParameter(format!(
                "amplitude vector has length {}, lattice has {} vertices",
                amp.len(),
                cfg.volume()
            )));
        }
        Ok(AmplitudeField { cfg: *cfg, amp })
    }

    pub fn config(&self) -> &LatticeConfig {
        &self.cfg
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amp
    }

    pub fn amplitudes_mut(&mut self) -> &mut [f64] {
        &mut self.amp
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.amp
    }

    /// `Σ amp²` with a fixed pairwise summation tree.
    pub fn norm_sqr(&self) -> f64 {
        pairwise_sum(&self.amp, &self.amp)
    }

    pub fn norm_error(&self) -> f64 {
        (self.norm_sqr() - 1.0).abs()
    }

    pub fn dot(&self, other: &AmplitudeField) -> f64 {
        assert_eq!(self.cfg, other.cfg, "fields are on different lattices");
        pairwise_sum(&self.amp, &other.amp)
    }
}

/// `Σ a_i b_i`: sequential within 256-element leaves, pairwise above. The
/// tree shape depends only on the length.
fn pairwise_sum(a: &[f64], b: &[f64]) -> f64 {
    const LEAF: usize = 256;
    if a.len() <= LEAF {
        return a.iter().zip(b).map(|(x, y)| x * y).sum();
    }
    let mid = (a.len() / 2).div_ceil(LEAF) * LEAF;
    pairwise_sum(&a[..mid], &b[..mid]) + pairwise_sum(&a[mid..], &b[mid..])
}

/// Nonempty set of distinct marked vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarkedSet {
    vertices: Vec<usize>,
}

impl MarkedSet {
    pub fn new(cfg: &LatticeConfig, vertices: Vec<usize>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidParameter("marked set is empty".into()));
        }
        for (i, &v) in vertices.iter().enumerate() {
            if v >= cfg.volume() {
                return Err(Error::IndexOutOfRange {
                    index: v,
                    volume: cfg.volume(),
                });
            }
            if vertices[..i].contains(&v) {
                return Err(Error::InvalidParameter(format!("vertex {v} marked twice")));
            }
        }
        Ok(MarkedSet { vertices })
    }

    pub fn single(cfg: &LatticeConfig, v: usize) -> Result<Self> {
        Self::new(cfg, vec![v])
    }

    pub fn from_coords(cfg: &LatticeConfig, coords: &[VertexCoords]) -> Result<Self> {
        let vertices = coords
            .iter()
            .map(|x| cfg.vertex_index(x))
            .collect::<Result<_>>()?;
        Self::new(cfg, vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Negates the amplitudes at the marked vertices.
pub fn apply_oracle(field: &mut AmplitudeField, marked: &MarkedSet) {
    for &v in marked.vertices() {
        field.amp[v] = -field.amp[v];
    }
}

pub fn marked_probability(field: &AmplitudeField, marked: &MarkedSet) -> f64 {
    marked
        .vertices()
        .iter()
        .map(|&v| field.amp[v] * field.amp[v])
        .sum()
}

/// Block rotation of one parity in sparse form: row `r` of `s K` has
/// `coeffs[r * d + j]` at column `r ^ (1 << j)`.
#[derive(Debug, Clone)]
struct BlockKernel {
    parity: Parity,
    c: f64,
    coeffs: Vec<f64>,
}

impl BlockKernel {
    fn new(dim: usize, parity: Parity, params: &WalkParams) -> Result<Self> {
        let coeffs = build_block_hamiltonian(dim, parity)?
            .neighbour_coefficients()
            .into_iter()
            .map(|k| params.s * k)
            .collect();
        Ok(BlockKernel {
            parity,
            c: params.c,
            coeffs,
        })
    }
}

/// Per-slab scratch space: row offsets, block-row counters and a copy of
/// the `2^(d-1)` axis-0 rows touched by one row of blocks.
struct Scratch {
    offsets: Vec<usize>,
    counters: Vec<usize>,
    rows: Vec<f64>,
}

/// Precomputed walk operator `W = U_e U_o` for one lattice and parameter set.
#[derive(Debug, Clone)]
pub struct Walk {
    cfg: LatticeConfig,
    params: WalkParams,
    odd: RowKernel,
    even: RowKernel,
}

/// Block rotation rearranged for row-wise application. A block row is the
/// set of `2^(d-1)` axis-0 rows through one line of blocks; row `m` carries
/// corner bits `1..d` of `r = (m << 1) | bit0`. At axis-0 position `x`,
/// `bit0 = (x & 1) ^ offset`, so every coefficient is expanded to a full
/// row of alternating values.
#[derive(Debug, Clone)]
struct RowKernel {
    parity: Parity,
    dim: usize,
    side: usize,
    c: f64,
    /// Row `m`: coefficient of the axis-0 partner at each position.
    partner: Vec<f64>,
    /// Row `m * (d-1) + j - 1`: coefficient of row `m ^ (1 << (j-1))`.
    across: Vec<f64>,
}

impl RowKernel {
    fn new(block: &BlockKernel, dim: usize, side: usize) -> Self {
        let off = block.parity.base_offset();
        let rows = 1usize << (dim - 1);
        let coeff = |m: usize, x: usize, j: usize| {
            let r = (m << 1) | ((x & 1) ^ off);
            block.coeffs[r * dim + j]
        };
        let partner = (0..rows)
            .flat_map(|m| (0..side).map(move |x| coeff(m, x, 0)))
            .collect();
        let across = (0..rows)
            .flat_map(|m| (1..dim).flat_map(move |j| (0..side).map(move |x| coeff(m, x, j))))
            .collect();
        RowKernel {
            parity: block.parity,
            dim,
            side,
            c: block.c,
            partner,
            across,
        }
    }

    /// Writes row `m` of the rotated block row into `dst`, reading the
    /// original rows from `src` (row `k` at `src[k*side..]`).
    #[inline]
    fn apply_row(&self, m: usize, src: &[f64], dst: &mut [f64]) {
        let side = self.side;
        let dst = &mut dst[..side];
        let own = &src[m * side..(m + 1) * side];
        let pc = &self.partner[m * side..(m + 1) * side];
        let c = self.c;
        if self.parity.base_offset() == 0 {
            for ((o, i), k) in dst
                .chunks_exact_mut(2)
                .zip(own.chunks_exact(2))
                .zip(pc.chunks_exact(2))
            {
                o[0] = c * i[0] + k[0] * i[1];
                o[1] = c * i[1] + k[1] * i[0];
            }
        } else {
            for x in (1..side - 1).step_by(2) {
                dst[x] = c * own[x] + pc[x] * own[x + 1];
                dst[x + 1] = c * own[x + 1] + pc[x + 1] * own[x];
            }
            dst[side - 1] = c * own[side - 1] + pc[side - 1] * own[0];
            dst[0] = c * own[0] + pc[0] * own[side - 1];
        }
        let terms = self.dim - 1;
        for j in 0..terms {
            let other = m ^ (1 << j);
            let row = &src[other * side..(other + 1) * side];
            let k = &self.across[(m * terms + j) * side..(m * terms + j + 1) * side];
            for ((o, &i), &k) in dst.iter_mut().zip(row).zip(k) {
                *o += k * i;
            }
        }
    }
}

impl Walk {
    pub fn new(cfg: &LatticeConfig, params: &WalkParams) -> Result<Self> {
        let d = cfg.dim();
        Ok(Walk {
            cfg: *cfg,
            params: *params,
            odd: RowKernel::new(&BlockKernel::new(d, Parity::Odd, params)?, d, cfg.side()),
            even: RowKernel::new(&BlockKernel::new(d, Parity::Even, params)?, d, cfg.side()),
        })
    }

    pub fn config(&self) -> &LatticeConfig {
        &self.cfg
    }

    pub fn params(&self) -> &WalkParams {
        &self.params
    }

    fn check(&self, field: &AmplitudeField) {
        assert_eq!(
            field.cfg, self.cfg,
            "field and walk are on different lattices"
        );
    }

    /// Applies `U_o` or `U_e` in place.
    pub fn half_step(&self, field: &mut AmplitudeField, parity: Parity) {
        self.check(field);
        let kernel = match parity {
            Parity::Odd => &self.odd,
            Parity::Even => &self.even,
        };
        let data = field.amp.as_mut_slice();
        if self.cfg.dim() == 1 {
            let copy = data.to_vec();
            kernel.apply_row(0, &copy, data);
            return;
        }
        let layer = self.cfg.volume() / self.cfg.side();
        match parity {
            Parity::Odd => {
                data.par_chunks_mut(2 * layer).for_each_init(
                    || self.scratch(),
                    |scratch, slab| {
                        let (lower, upper) = slab.split_at_mut(layer);
                        self.apply_slab(kernel, lower, upper, scratch);
                    },
                );
            }
            Parity::Even => {
                // Layers (1,2), (3,4), ..., (L-3, L-2) and the wrapped (L-1, 0).
                let (first, rest) = data.split_at_mut(layer);
                let (middle, last) = rest.split_at_mut(layer * (self.cfg.side() - 2));
                middle
                    .par_chunks_mut(2 * layer)
                    .map(|slab| slab.split_at_mut(layer))
                    .chain(rayon::iter::once((last, first)))
                    .for_each_init(
                        || self.scratch(),
                        |scratch, (lower, upper)| {
                            self.apply_slab(kernel, lower, upper, scratch);
                        },
                    );
            }
        }
    }

    /// One walk step `W = U_e U_o` (odd half first).
    pub fn step(&self, field: &mut AmplitudeField) {
        self.half_step(field, Parity::Odd);
        self.half_step(field, Parity::Even);
    }

    pub fn steps(&self, field: &mut AmplitudeField, count: usize) {
        for _ in 0..count {
            self.step(field);
        }
    }

    /// One search iteration `W^{t1} R`.
    pub fn query(&self, field: &mut AmplitudeField, marked: &MarkedSet) {
        apply_oracle(field, marked);
        self.steps(field, self.params.steps_per_query);
    }

    fn scratch(&self) -> Scratch {
        let d = self.cfg.dim();
        let in_layer = 1usize << (d - 2);
        Scratch {
            offsets: vec![0; in_layer],
            counters: vec![0; d - 2],
            rows: vec![0.0; 2 * in_layer * self.cfg.side()],
        }
    }

    /// Rotates every block whose members lie in the two given layers of
    /// the slowest axis (`d >= 2`). Blocks are taken a row at a time along
    /// axis 0; axes `1..d-1` select the block row, and corner bit `d-1`
    /// selects the layer.
    fn apply_slab(
        &self,
        kernel: &RowKernel,
        lower: &mut [f64],
        upper: &mut [f64],
        scratch: &mut Scratch,
    ) {
        let d = self.cfg.dim();
        let side = self.cfg.side();
        let in_layer = 1usize << (d - 2);
        let off = kernel.parity.base_offset();
        let Scratch {
            offsets,
            counters,
            rows,
        } = scratch;

        counters.iter_mut().for_each(|k| *k = 0);
        let blocks_per_axis = side / 2;
        let block_rows = blocks_per_axis.pow((d - 2) as u32);
        for _ in 0..block_rows {
            // Row start of the lowest corner, then the others by doubling
            // over axes 1..d-1.
            let mut stride = side;
            let mut base = 0;
            for &k in counters.iter() {
                base += (2 * k + off) * stride;
                stride *= side;
            }
            offsets[0] = base;
            let mut stride = side;
            for (j, &k) in counters.iter().enumerate() {
                let x = 2 * k + off;
                let bit = 1 << j;
                let wraps = x + 1 == side;
                for m in 0..bit {
                    offsets[m | bit] = if wraps {
                        offsets[m] - x * stride
                    } else {
                        offsets[m] + stride
                    };
                }
                stride *= side;
            }

            for (m, &o) in offsets.iter().enumerate() {
                rows[m * side..(m + 1) * side].copy_from_slice(&lower[o..o + side]);
                rows[(m + in_layer) * side..(m + in_layer + 1) * side]
                    .copy_from_slice(&upper[o..o + side]);
            }
            for (m, &o) in offsets.iter().enumerate() {
                kernel.apply_row(m, rows, &mut lower[o..o + side]);
                kernel.apply_row(m + in_layer, rows, &mut upper[o..o + side]);
            }

            for k in counters.iter_mut() {
                *k += 1;
                if *k < blocks_per_axis {
                    break;
                }
                *k = 0;
            }
        }
    }
}

/// Convenience wrapper building the walk operator on each call.
pub fn apply_half_step(
    field: &mut AmplitudeField,
    parity: Parity,
    params: &WalkParams,
) -> Result<()> {
    let walk = Walk::new(field.config(), params)?;
    walk.half_step(field, parity);
    Ok(())
}

pub fn walk_step(field: &mut AmplitudeField, params: &WalkParams) -> Result<()> {
    let walk = Walk::new(field.config(), params)?;
    walk.step(field);
    Ok(())
}

/// When to stop a search run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum StopRule {
    /// Run exactly this many queries.
    Queries(usize),
    /// Stop once the first peak of the total marked probability and of
    /// every marked vertex has been detected, or after `max_queries`.
    FirstPeak { max_queries: usize },
}

impl StopRule {
    /// Query budget `⌈3 √N⌉` used by parameter scans.
    pub fn default_budget(cfg: &LatticeConfig) -> usize {
        (3.0 * (cfg.volume() as f64).sqrt()).ceil() as usize
    }

    pub fn max_queries(&self) -> usize {
        match *self {
            StopRule::Queries(n) => n,
            StopRule::FirstPeak { max_queries } => max_queries,
        }
    }
}

/// State of the search after one query.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub t2: usize,
    /// Total probability on the marked set.
    pub prob: f64,
    /// Probability at each marked vertex, in marked-set order.
    pub per_vertex: Vec<f64>,
    pub norm_err: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SearchTrace {
    pub records: Vec<TraceRecord>,
}

impl SearchTrace {
    pub fn probabilities(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.prob).collect()
    }

    pub fn vertex_probabilities(&self, k: usize) -> Vec<f64> {
        self.records.iter().map(|r| r.per_vertex[k]).collect()
    }

    pub fn max_norm_error(&self) -> f64 {
        self.records.iter().map(|r| r.norm_err).fold(0.0, f64::max)
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    /// First-cycle peak of the total marked probability.
    pub peak: PeakResult,
    /// First-cycle peak at each marked vertex.
    pub per_vertex: Vec<PeakResult>,
    /// `t2 / √P`, when a valid peak with `P > 0` exists.
    pub effective_queries: Option<f64>,
}

/// Runs `[W^{t1} R]^{t2}` from the uniform state, recording the marked
/// probability after every query.
pub fn run_search(
    cfg: &LatticeConfig,
    params: &WalkParams,
    marked: &MarkedSet,
    stop: StopRule,
) -> Result<(SearchTrace, SearchOutcome)> {
    for &v in marked.vertices() {
        if v >= cfg.volume() {
            return Err(Error::IndexOutOfRange {
                index: v,
                volume: cfg.volume(),
            });
        }
    }
    let walk = Walk::new(cfg, params)?;
    let mut field = AmplitudeField::uniform(cfg);
    let mut total = PeakTracker::new();
    let mut vertex_trackers = vec![PeakTracker::new(); marked.len()];
    let mut trace = SearchTrace::default();

    for t2 in 1..=stop.max_queries() {
        walk.query(&mut field, marked);
        let per_vertex: Vec<f64> = marked
            .vertices()
            .iter()
            .map(|&v| field.amp[v] * field.amp[v])
            .collect();
        let prob: f64 = per_vertex.iter().sum();
        total.push(t2, prob);
        for (tracker, &p) in vertex_trackers.iter_mut().zip(&per_vertex) {
            tracker.push(t2, p);
        }
        trace.records.push(TraceRecord {
            t2,
            prob,
            per_vertex,
            norm_err: field.norm_error(),
        });

        if let StopRule::FirstPeak { .. } = stop {
            if total.is_done() && vertex_trackers.iter().all(PeakTracker::is_done) {
                break;
            }
        }
    }

    let peak = total.result();
    let per_vertex: Vec<PeakResult> = vertex_trackers.iter().map(PeakTracker::result).collect();
    let effective_queries = (peak.valid && peak.p > 0.0).then(|| peak.t2 as f64 / peak.p.sqrt());
    Ok((
        trace,
        SearchOutcome {
            peak,
            per_vertex,
            effective_queries,
        },
    ))
}

/// `A(t1) = <0|W^{t1}|0>`, the amplitude to return to the origin.
pub fn return_amplitude(cfg: &LatticeConfig, params: &WalkParams) -> Result<f64> {
    return_amplitude_at(cfg, params, 0)
}

/// `<v|W^{t1}|v>` for an arbitrary start vertex.
pub fn return_amplitude_at(cfg: &LatticeConfig, params: &WalkParams, v: usize) -> Result<f64> {
    let walk = Walk::new(cfg, params)?;
    let mut field = AmplitudeField::point(cfg, v)?;
    walk.steps(&mut field, params.steps_per_query);
    Ok(field.amp[v])
}

/// `|s_perp> = (|s> - √N |0>) / √(N-1)`.
pub fn perpendicular_state(cfg: &LatticeConfig) -> AmplitudeField {
    let n = cfg.volume() as f64;
    let mut field = AmplitudeField::uniform(cfg);
    field.amp[0] -= n.sqrt();
    let scale = 1.0 / (n - 1.0).sqrt();
    field.amp.iter_mut().for_each(|a| *a *= scale);
    field
}

/// Projection of `W^{t1} R` (marked vertex at the origin) onto the plane
/// spanned by `|s>` and `|s_perp>`, from direct evolution of both states.
/// Entry `[i][j]` is `<e_i| W^{t1} R |e_j>` with `e_0 = s`, `e_1 = s_perp`.
pub fn projection_matrix(cfg: &LatticeConfig, params: &WalkParams) -> Result<[[f64; 2]; 2]> {
    let walk = Walk::new(cfg, params)?;
    let marked = MarkedSet::single(cfg, 0)?;
    let basis = [AmplitudeField::uniform(cfg), perpendicular_state(cfg)];
    let mut out = [[0.0; 2]; 2];
    for (j, ket) in basis.iter().enumerate() {
        let mut evolved = ket.clone();
        walk.query(&mut evolved, &marked);
        for (i, bra) in basis.iter().enumerate() {
            out[i][j] = bra.dot(&evolved);
        }
    }
    Ok(out)
}

/// Closed form of the projection given `A(t1)` and `N`.
pub fn projection_closed_form(volume: usize, a: f64) -> [[f64; 2]; 2] {
    let n = volume as f64;
    let r = (n - 1.0).sqrt();
    [
        [1.0 - 2.0 / n, 2.0 / n * r],
        [
            2.0 / r * (a - 1.0 / n),
            (1.0 - 2.0 / n) * (1.0 - n * a) / (n - 1.0),
        ],
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn cfg(d: usize, l: usize) -> LatticeConfig {
        LatticeConfig::new(d, l).unwrap()
    }

    #[test]
    fn params_validation() {
        assert!(WalkParams::new(1.2, 3).is_err());
        assert!(WalkParams::new(0.5, 0).is_err());
        let p = WalkParams::new(0.6, 2).unwrap();
        assert_abs_diff_eq!(p.c(), 0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(p.tau(1), 2.0 * 0.6f64.asin());
        assert!(WalkParams::new(0.0, 1).unwrap().tau(3) == 0.0);
    }

    #[test]
    fn initial_states() {
        let c = cfg(1, 4);
        assert_eq!(AmplitudeField::uniform(&c).amplitudes(), &[0.5; 4]);
        assert_eq!(
            AmplitudeField::point(&c, 0).unwrap().amplitudes(),
            &[1.0, 0.0, 0.0, 0.0]
        );
        assert!(AmplitudeField::point(&c, 4).is_err());
        let c = cfg(3, 8);
        assert_abs_diff_eq!(AmplitudeField::uniform(&c).norm_sqr(), 1.0, epsilon = 1e-13);
        let m = MarkedSet::single(&c, 17).unwrap();
        assert_eq!(
            marked_probability(&AmplitudeField::point(&c, 17).unwrap(), &m),
            1.0
        );
        assert_abs_diff_eq!(
            marked_probability(&AmplitudeField::uniform(&c), &m),
            1.0 / 512.0,
            epsilon = 1e-16
        );
    }

    #[test]
    fn marked_set_validation() {
        let c = cfg(2, 4);
        assert!(MarkedSet::new(&c, vec![]).is_err());
        assert!(MarkedSet::new(&c, vec![1, 1]).is_err());
        assert!(MarkedSet::new(&c, vec![16]).is_err());
        let m = MarkedSet::from_coords(&c, &[VertexCoords(vec![1, 2])]).unwrap();
        assert_eq!(m.vertices(), &[9]);
    }

    #[test]
    fn oracle_examples() {
        let c = cfg(1, 4);
        let mut f = AmplitudeField::uniform(&c);
        let m = MarkedSet::single(&c, 0).unwrap();
        apply_oracle(&mut f, &m);
        assert_eq!(f.amplitudes(), &[-0.5, 0.5, 0.5, 0.5]);
        apply_oracle(&mut f, &m);
        assert_eq!(f, AmplitudeField::uniform(&c));
        let m2 = MarkedSet::new(&c, vec![1, 3]).unwrap();
        apply_oracle(&mut f, &m2);
        assert_eq!(f.amplitudes(), &[0.5, -0.5, 0.5, -0.5]);
        assert_abs_diff_eq!(marked_probability(&f, &m2), 0.5);
    }

    #[test]
    fn half_step_one_dimension() {
        let c = cfg(1, 4);
        let s: f64 = 0.6;
        let p = WalkParams::new(s, 1).unwrap();
        let mut f = AmplitudeField::point(&c, 2).unwrap();
        apply_half_step(&mut f, Parity::Odd, &p).unwrap();
        assert_abs_diff_eq!(f.amplitudes()[2], 0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(f.amplitudes()[3], -0.6, epsilon = 1e-15);
        assert_eq!(f.amplitudes()[0], 0.0);
        assert_eq!(f.amplitudes()[1], 0.0);

        // Even block (3, 0) wraps.
        let mut f = AmplitudeField::point(&c, 3).unwrap();
        apply_half_step(&mut f, Parity::Even, &p).unwrap();
        assert_abs_diff_eq!(f.amplitudes()[3], 0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(f.amplitudes()[0], -0.6, epsilon = 1e-15);
    }

    #[test]
    fn zero_mixing_is_identity() {
        let c = cfg(3, 6);
        let p = WalkParams::new(0.0, 1).unwrap();
        let amp: Vec<f64> = (0..c.volume()).map(|i| (i as f64 * 0.37).sin()).collect();
        let mut f = AmplitudeField::from_vec(&c, amp.clone()).unwrap();
        walk_step(&mut f, &p).unwrap();
        assert_eq!(f.amplitudes(), amp.as_slice());
    }

    #[test]
    fn uniform_state_is_fixed_point() {
        for (d, l) in [(1, 8), (2, 4), (3, 4), (3, 8), (4, 6), (5, 4)] {
            let c = cfg(d, l);
            for &s in &[0.3, std::f64::consts::FRAC_1_SQRT_2, 1.0] {
                let p = WalkParams::new(s, 1).unwrap();
                let mut f = AmplitudeField::uniform(&c);
                walk_step(&mut f, &p).unwrap();
                let u = AmplitudeField::uniform(&c);
                let dev = f
                    .amplitudes()
                    .iter()
                    .zip(u.amplitudes())
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0, f64::max);
                assert!(dev < 1e-12, "d={d} L={l} s={s}: {dev}");
            }
        }
    }

    #[test]
    fn return_amplitude_trivial_cases() {
        let c = cfg(3, 8);
        let p = WalkParams::new(0.0, 5).unwrap();
        assert_eq!(return_amplitude(&c, &p).unwrap(), 1.0);
    }

    #[test]
    fn projection_exact_entries() {
        let c = cfg(2, 6);
        let n = c.volume() as f64;
        for &(s, t1) in &[(0.4, 1), (0.7, 3), (0.95, 2)] {
            let p = WalkParams::new(s, t1).unwrap();
            let m = projection_matrix(&c, &p).unwrap();
            assert_abs_diff_eq!(m[0][0], 1.0 - 2.0 / n, epsilon = 1e-12);
            assert_abs_diff_eq!(m[0][1], 2.0 / n * (n - 1.0).sqrt(), epsilon = 1e-12);
        }
    }

    #[test]
    fn search_stops_and_reports() {
        let c = cfg(3, 8);
        let p = WalkParams::new(std::f64::consts::FRAC_1_SQRT_2, 3).unwrap();
        let m = MarkedSet::single(&c, 0).unwrap();
        let (trace, out) = run_search(&c, &p, &m, StopRule::Queries(40)).unwrap();
        assert_eq!(trace.len(), 40);
        assert_eq!(trace.records[0].t2, 1);
        assert!(trace.max_norm_error() < 1e-12);
        assert_eq!(out.per_vertex.len(), 1);

        let flat = WalkParams::new(0.0, 1).unwrap();
        let (trace, out) = run_search(&c, &flat, &m, StopRule::Queries(5)).unwrap();
        for r in &trace.records {
            assert_abs_diff_eq!(r.prob, 1.0 / 512.0, epsilon = 1e-15);
        }
        assert!(!out.peak.valid);
        assert!(out.effective_queries.is_none());
    }
}
