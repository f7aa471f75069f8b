//! Staggered-fermion block Hamiltonians and their exact exponentials.
//!
//! On one elementary hypercube the odd-part Hamiltonian is
//!
//! ```text
//! H_o = -1/2 * sum_j  I ⊗ ... ⊗ σ2 (slot j) ⊗ σ3 ⊗ ... ⊗ σ3 (slots < j)
//! ```
//!
//! where tensor slot `j` is the local corner bit `j` (stride `2^j`). The
//! `d` summands anticommute and square to `I/4`, so `H^2 = (d/4) I` and the
//! block exponential is exact: `exp(-i H τ) = c I + s K` with
//! `s = sin(√d τ / 2)` and the real antisymmetric `K = -2 i H / √d`,
//! `K^2 = -I`. Everything downstream works with `K` in real arithmetic.
//!
//! The even part, written in the standard corner ordering of even blocks,
//! is `-P H_o P` where `P` complements every local bit.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lattice::{LatticeConfig, Parity, VertexCoords};

/// Largest vertex count for which dense `N x N` operators are built.
pub const DENSE_LIMIT: usize = 4096;

/// Largest dimension for which dense `2^d x 2^d` block matrices are built.
pub const MAX_BLOCK_DIM: usize = 12;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

fn pauli(k: u8) -> DMatrix<Complex64> {
    match k {
        0 => DMatrix::identity(2, 2),
        1 => DMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO]),
        2 => DMatrix::from_row_slice(2, 2, &[ZERO, -I, I, ZERO]),
        3 => DMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE]),
        _ => unreachable!("no Pauli matrix {k}"),
    }
}

/// Kronecker product of single-slot factors; `factors[j]` acts on local bit `j`.
fn tensor(factors: &[u8]) -> DMatrix<Complex64> {
    factors
        .iter()
        .fold(DMatrix::identity(1, 1), |acc: DMatrix<Complex64>, &k| {
            pauli(k).kronecker(&acc)
        })
}

fn check_dim(d: usize) -> Result<()> {
    if d == 0 || d > MAX_BLOCK_DIM {
        return Err(Error::InvalidParameter(format!(
            "block dimension must be in 1..={MAX_BLOCK_DIM}, got {d}"
        )));
    }
    Ok(())
}

/// The `d` summands of the odd block Hamiltonian, each without the `-1/2`.
pub fn block_summands(d: usize) -> Result<Vec<DMatrix<Complex64>>> {
    check_dim(d)?;
    Ok((0..d)
        .map(|j| {
            let factors: Vec<u8> = (0..d)
                .map(|slot| match slot.cmp(&j) {
                    std::cmp::Ordering::Less => 3,
                    std::cmp::Ordering::Equal => 2,
                    std::cmp::Ordering::Greater => 0,
                })
                .collect();
            tensor(&factors)
        })
        .collect())
}

/// Block Hamiltonian of one parity, stored through its real companion
/// `K = -2 i H / √d`.
#[derive(Debug, Clone)]
pub struct BlockHamiltonian {
    dim: usize,
    parity: Parity,
    companion: DMatrix<f64>,
}

impl BlockHamiltonian {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// Real antisymmetric `K` with `K^2 = -I`.
    pub fn companion(&self) -> &DMatrix<f64> {
        &self.companion
    }

    /// The Hermitian, purely imaginary `H = (i √d / 2) K`.
    pub fn hamiltonian(&self) -> DMatrix<Complex64> {
        let scale = I * ((self.dim as f64).sqrt() / 2.0);
        self.companion.map(|k| scale * k)
    }

    /// `K[r][r ^ (1 << j)]` for every row `r` and direction `j`, laid out
    /// row-major (`r * d + j`). These are the only nonzero entries of `K`.
    pub fn neighbour_coefficients(&self) -> Vec<f64> {
        let n = 1usize << self.dim;
        let mut out = Vec::with_capacity(n * self.dim);
        for r in 0..n {
            for j in 0..self.dim {
                out.push(self.companion[(r, r ^ (1 << j))]);
            }
        }
        out
    }
}

pub fn build_block_hamiltonian(d: usize, parity: Parity) -> Result<BlockHamiltonian> {
    let n = 1usize << d;
    let mut h = DMatrix::<Complex64>::zeros(n, n);
    for term in block_summands(d)? {
        h += term * Complex64::new(-0.5, 0.0);
    }
    if parity == Parity::Even {
        // -P H P with P the all-bits complement: entry (a, b) -> -(ā, b̄).
        let mask = n - 1;
        h = DMatrix::from_fn(n, n, |a, b| -h[(a ^ mask, b ^ mask)]);
    }
    let scale = -2.0 * I / (d as f64).sqrt();
    let companion = h.map(|z| {
        let k = scale * z;
        debug_assert!(k.im.abs() < 1e-14);
        k.re
    });
    Ok(BlockHamiltonian {
        dim: d,
        parity,
        companion,
    })
}

/// Exact block exponential `U = c I + s K`, a real orthogonal matrix.
#[derive(Debug, Clone)]
pub struct BlockRotation {
    hamiltonian: BlockHamiltonian,
    s: f64,
    c: f64,
    matrix: DMatrix<f64>,
}

impl BlockRotation {
    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn parity(&self) -> Parity {
        self.hamiltonian.parity
    }

    pub fn dim(&self) -> usize {
        self.hamiltonian.dim
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    pub fn hamiltonian(&self) -> &BlockHamiltonian {
        &self.hamiltonian
    }
}

/// Mixing amplitude must lie in `[0, 1]`; returns `c = √(1 - s²)`.
pub fn mixing_cosine(s: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&s) {
        return Err(Error::InvalidParameter(format!(
            "mixing amplitude s = {s} outside [0, 1]"
        )));
    }
    Ok((1.0 - s * s).max(0.0).sqrt())
}

pub fn build_block_rotation(d: usize, parity: Parity, s: f64) -> Result<BlockRotation> {
    let c = mixing_cosine(s)?;
    let hamiltonian = build_block_hamiltonian(d, parity)?;
    let n = 1usize << d;
    let matrix = DMatrix::<f64>::identity(n, n) * c + hamiltonian.companion() * s;
    Ok(BlockRotation {
        hamiltonian,
        s,
        c,
        matrix,
    })
}

/// Staggered link sign `η_axis(x) = Π_{j < axis} (-1)^{x_j}` (axes from 0).
pub fn link_sign(x: &VertexCoords, axis: usize) -> i8 {
    let flips: usize = x.as_slice()[..axis].iter().map(|&xj| xj & 1).sum();
    if flips.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// One parity part of the lattice Hamiltonian as a dense `N x N` matrix,
/// assembled link by link. Test support for small lattices only.
///
/// The link from `x` to `x + ê_n` carries `<x+ê_n|H|x> = -(i/2) η_n(x)`
/// and belongs to the odd part when `x_n` is even.
pub fn assemble_dense_partition(cfg: &LatticeConfig, parity: Parity) -> Result<DMatrix<Complex64>> {
    let n = cfg.volume();
    if n > DENSE_LIMIT {
        return Err(Error::TooLarge {
            volume: n,
            limit: DENSE_LIMIT,
        });
    }
    let mut h = DMatrix::<Complex64>::zeros(n, n);
    for v in 0..n {
        let x = cfg.coords_of(v)?;
        for axis in 0..cfg.dim() {
            if x.as_slice()[axis] % 2 != parity.base_offset() {
                continue;
            }
            let w = cfg.neighbor(v, axis, true);
            let amp = I * (-0.5 * f64::from(link_sign(&x, axis)));
            h[(w, v)] += amp;
            h[(v, w)] += amp.conj();
        }
    }
    Ok(h)
}
