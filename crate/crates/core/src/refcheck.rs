//! Dense-matrix reference operators for small lattices.
//!
//! Everything here is built as an explicit complex `N x N` matrix, capped at
//! `N <= 4096`, and serves as ground truth for the block kernel.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::dirac::{build_block_rotation, DENSE_LIMIT};
use crate::error::{Error, Result};
use crate::evolve::{MarkedSet, WalkParams};
use crate::lattice::{LatticeConfig, Parity};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperatorLabel {
    OddRotation,
    EvenRotation,
    Walk,
    Oracle,
    SearchStep,
    Grover,
}

#[derive(Debug, Clone)]
pub struct DenseOperator {
    pub label: OperatorLabel,
    pub matrix: DMatrix<Complex64>,
}

impl DenseOperator {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// `max |U† U - I|`.
    pub fn unitarity_error(&self) -> f64 {
        let n = self.dim();
        let id = DMatrix::<Complex64>::identity(n, n);
        (self.matrix.adjoint() * &self.matrix - id)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// Largest imaginary part of any entry.
    pub fn max_imaginary(&self) -> f64 {
        self.matrix.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    pub fn apply(&self, state: &[Complex64]) -> Vec<Complex64> {
        let v = DVector::from_column_slice(state);
        (&self.matrix * v).as_slice().to_vec()
    }

    pub fn apply_real(&self, state: &[f64]) -> Vec<Complex64> {
        let v: Vec<Complex64> = state.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        self.apply(&v)
    }

    pub fn compose(&self, rhs: &DenseOperator, label: OperatorLabel) -> DenseOperator {
        DenseOperator {
            label,
            matrix: &self.matrix * &rhs.matrix,
        }
    }

    pub fn pow(&self, k: usize, label: OperatorLabel) -> DenseOperator {
        let n = self.dim();
        let mut out = DMatrix::<Complex64>::identity(n, n);
        for _ in 0..k {
            out = &self.matrix * out;
        }
        DenseOperator { label, matrix: out }
    }

    /// Real projection onto the plane of `|s>` and
    /// `|s_perp> = (|s> - √N |0>) / √(N-1)`; entry `[i][j]` is
    /// `Re <e_i|U|e_j>`.
    pub fn plane_projection(&self) -> [[f64; 2]; 2] {
        let n = self.dim();
        let nf = n as f64;
        let s = DVector::from_element(n, Complex64::new(1.0 / nf.sqrt(), 0.0));
        let mut perp = s.clone();
        perp[0] -= Complex64::new(nf.sqrt(), 0.0);
        perp /= Complex64::new((nf - 1.0).sqrt(), 0.0);
        let basis = [s, perp];
        let mut out = [[0.0; 2]; 2];
        for (j, ket) in basis.iter().enumerate() {
            let image = &self.matrix * ket;
            for (i, bra) in basis.iter().enumerate() {
                out[i][j] = bra.dotc(&image).re;
            }
        }
        out
    }
}

fn guard(n: usize) -> Result<()> {
    if n > DENSE_LIMIT {
        return Err(Error::TooLarge {
            volume: n,
            limit: DENSE_LIMIT,
        });
    }
    Ok(())
}

/// `U_o` or `U_e` as a dense matrix, one block rotation per block.
pub fn dense_half_step(
    cfg: &LatticeConfig,
    parity: Parity,
    params: &WalkParams,
) -> Result<DenseOperator> {
    let n = cfg.volume();
    guard(n)?;
    let rotation = build_block_rotation(cfg.dim(), parity, params.s())?;
    let block = rotation.matrix();
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for b in cfg.enumerate_blocks(parity) {
        let members = cfg.block_members(&b);
        for (r, &mr) in members.iter().enumerate() {
            for (c, &mc) in members.iter().enumerate() {
                m[(mr, mc)] = Complex64::new(block[(r, c)], 0.0);
            }
        }
    }
    let label = match parity {
        Parity::Odd => OperatorLabel::OddRotation,
        Parity::Even => OperatorLabel::EvenRotation,
    };
    Ok(DenseOperator { label, matrix: m })
}

/// `W = U_e U_o`.
pub fn dense_walk(cfg: &LatticeConfig, params: &WalkParams) -> Result<DenseOperator> {
    let odd = dense_half_step(cfg, Parity::Odd, params)?;
    let even = dense_half_step(cfg, Parity::Even, params)?;
    Ok(even.compose(&odd, OperatorLabel::Walk))
}

/// `R = I - 2 Σ_m |m><m|`.
pub fn dense_oracle(n: usize, marked: &MarkedSet) -> Result<DenseOperator> {
    guard(n)?;
    let mut m = DMatrix::<Complex64>::identity(n, n);
    for &v in marked.vertices() {
        if v >= n {
            return Err(Error::IndexOutOfRange {
                index: v,
                volume: n,
            });
        }
        m[(v, v)] = Complex64::new(-1.0, 0.0);
    }
    Ok(DenseOperator {
        label: OperatorLabel::Oracle,
        matrix: m,
    })
}

/// One search iteration `W^{t1} R`.
pub fn dense_search_step(
    cfg: &LatticeConfig,
    params: &WalkParams,
    marked: &MarkedSet,
) -> Result<DenseOperator> {
    let walk = dense_walk(cfg, params)?.pow(params.steps_per_query(), OperatorLabel::Walk);
    let oracle = dense_oracle(cfg.volume(), marked)?;
    Ok(walk.compose(&oracle, OperatorLabel::SearchStep))
}

/// One Grover iteration `G R` with `G = 2|s><s| - I`.
pub fn grover_step(n: usize, marked: &MarkedSet) -> Result<DenseOperator> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "Grover step needs N >= 2, got {n}"
        )));
    }
    guard(n)?;
    let inv = Complex64::new(2.0 / n as f64, 0.0);
    let mut g = DMatrix::<Complex64>::from_element(n, n, inv);
    for i in 0..n {
        g[(i, i)] -= Complex64::new(1.0, 0.0);
    }
    let oracle = dense_oracle(n, marked)?;
    Ok(DenseOperator {
        label: OperatorLabel::Grover,
        matrix: g * oracle.matrix,
    })
}

/// Marked-set probability after each of `queries` applications of `step`
/// to the uniform state.
pub fn dense_trace(step: &DenseOperator, marked: &MarkedSet, queries: usize) -> Vec<f64> {
    let n = step.dim();
    let mut state = vec![Complex64::new(1.0 / (n as f64).sqrt(), 0.0); n];
    (0..queries)
        .map(|_| {
            state = step.apply(&state);
            marked.vertices().iter().map(|&v| state[v].norm_sqr()).sum()
        })
        .collect()
}
