//! Periodic hypercubic lattice geometry.
//!
//! Vertices are addressed by a flat index with axis 0 fastest:
//! `index = x_0 + x_1 L + x_2 L^2 + ...`. The lattice is split into two
//! families of elementary hypercubes ("blocks"). Odd blocks have all base
//! coordinates even; even blocks are the odd ones shifted by `(1, ..., 1)`
//! with periodic wrap. Within a block, the member with local corner code
//! `b` (bit `j` set means one step along axis `j`) sits at position `b` of
//! the block's member list.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::error::{Error, Result};

/// Which of the two block families a block (or a half-step) belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    /// Coordinate parity of every base coordinate of a block of this family.
    pub fn base_offset(self) -> usize {
        match self {
            Parity::Odd => 0,
            Parity::Even => 1,
        }
    }

    pub fn other(self) -> Parity {
        match self {
            Parity::Odd => Parity::Even,
            Parity::Even => Parity::Odd,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Odd => f.write_str("odd"),
            Parity::Even => f.write_str("even"),
        }
    }
}

/// Vertex coordinates, one entry per axis, each in `[0, L)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexCoords(pub Vec<usize>);

impl VertexCoords {
    pub fn new(x: Vec<usize>) -> Self {
        VertexCoords(x)
    }

    pub fn origin(d: usize) -> Self {
        VertexCoords(vec![0; d])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl From<Vec<usize>> for VertexCoords {
    fn from(x: Vec<usize>) -> Self {
        VertexCoords(x)
    }
}

impl fmt::Display for VertexCoords {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// An elementary hypercube: its family and its lowest corner.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockId {
    pub parity: Parity,
    pub base: VertexCoords,
}

/// Shape of a periodic `d`-dimensional lattice with side `L`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeConfig {
    dim: usize,
    side: usize,
    volume: usize,
}

impl LatticeConfig {
    /// Validates `d >= 1`, even `L >= 4`, and that `L^d` fits in `usize`.
    pub fn new(dim: usize, side: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidLattice("dimension must be at least 1".into()));
        }
        if side < 4 || !side.is_multiple_of(2) {
            return Err(Error::InvalidLattice(format!(
                "side must be even and at least 4, got {side}"
            )));
        }
        let volume = u32::try_from(dim)
            .ok()
            .and_then(|d| side.checked_pow(d))
            .ok_or_else(|| {
                Error::InvalidLattice(format!("{side}^{dim} vertices overflow the index range"))
            })?;
        Ok(LatticeConfig { dim, side, volume })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn side(&self) -> usize {
        self.side
    }

    /// Number of vertices, `N = L^d`.
    pub fn volume(&self) -> usize {
        self.volume
    }

    /// Vertices per elementary hypercube, `2^d`.
    pub fn block_size(&self) -> usize {
        1 << self.dim
    }

    /// Number of blocks in each parity family, `N / 2^d`.
    pub fn blocks_per_parity(&self) -> usize {
        self.volume >> self.dim
    }

    /// Flat-index stride of axis `axis`, `L^axis`.
    pub fn stride(&self, axis: usize) -> usize {
        self.side.pow(axis as u32)
    }

    pub fn vertex_index(&self, coords: &VertexCoords) -> Result<usize> {
        if coords.dim() != self.dim {
            return Err(Error::InvalidParameter(format!(
                "expected {} coordinates, got {}",
                self.dim,
                coords.dim()
            )));
        }
        let mut index = 0;
        let mut stride = 1;
        for (axis, &x) in coords.as_slice().iter().enumerate() {
            if x >= self.side {
                return Err(Error::OutOfBounds {
                    axis,
                    value: x,
                    side: self.side,
                });
            }
            index += x * stride;
            stride *= self.side;
        }
        Ok(index)
    }

    pub fn coords_of(&self, index: usize) -> Result<VertexCoords> {
        if index >= self.volume {
            return Err(Error::IndexOutOfRange {
                index,
                volume: self.volume,
            });
        }
        let mut rest = index;
        let x = (0..self.dim)
            .map(|_| {
                let x = rest % self.side;
                rest /= self.side;
                x
            })
            .collect();
        Ok(VertexCoords(x))
    }

    /// Index of the neighbour one step along `axis`, forwards or backwards,
    /// with periodic wrap.
    pub fn neighbor(&self, index: usize, axis: usize, forward: bool) -> usize {
        let stride = self.stride(axis);
        let x = (index / stride) % self.side;
        let y = if forward {
            (x + 1) % self.side
        } else {
            (x + self.side - 1) % self.side
        };
        index - x * stride + y * stride
    }

    /// All blocks of one family, in flat-index order of their bases.
    pub fn enumerate_blocks(&self, parity: Parity) -> Vec<BlockId> {
        let half = self.side / 2;
        let count = self.blocks_per_parity();
        let off = parity.base_offset();
        (0..count)
            .map(|k| {
                let mut rest = k;
                let base = (0..self.dim)
                    .map(|_| {
                        let m = rest % half;
                        rest /= half;
                        2 * m + off
                    })
                    .collect();
                BlockId {
                    parity,
                    base: VertexCoords(base),
                }
            })
            .collect()
    }

    /// Checks that `block` has the shape of a block of this lattice.
    pub fn validate_block(&self, block: &BlockId) -> Result<()> {
        let off = block.parity.base_offset();
        if block.base.dim() != self.dim {
            return Err(Error::InvalidParameter(
                "block base has wrong dimension".into(),
            ));
        }
        for (axis, &x) in block.base.as_slice().iter().enumerate() {
            if x >= self.side {
                return Err(Error::OutOfBounds {
                    axis,
                    value: x,
                    side: self.side,
                });
            }
            if x % 2 != off {
                return Err(Error::InvalidParameter(format!(
                    "{} block base {} has coordinate of wrong parity on axis {axis}",
                    block.parity, block.base
                )));
            }
        }
        Ok(())
    }

    /// Flat indices of the `2^d` members of `block`, ordered by local
    /// corner code.
    pub fn block_members(&self, block: &BlockId) -> Vec<usize> {
        let mut members = vec![0usize; self.block_size()];
        let base = block.base.as_slice();
        members[0] = base
            .iter()
            .enumerate()
            .map(|(j, &x)| x * self.stride(j))
            .sum();
        for (j, &x) in base.iter().enumerate() {
            let bit = 1 << j;
            let step = ((x + 1) % self.side) as isize * self.stride(j) as isize
                - (x * self.stride(j)) as isize;
            for code in 0..bit {
                members[code | bit] = (members[code] as isize + step) as usize;
            }
        }
        members
    }

    /// Block containing `index` in the given family.
    pub fn block_of(&self, index: usize, parity: Parity) -> Result<BlockId> {
        let x = self.coords_of(index)?;
        let off = parity.base_offset();
        let base = x
            .as_slice()
            .iter()
            .map(|&xi| {
                if xi % 2 == off {
                    xi
                } else {
                    (xi + self.side - 1) % self.side
                }
            })
            .collect();
        Ok(BlockId {
            parity,
            base: VertexCoords(base),
        })
    }

    /// Local corner code of a vertex inside its block of either family.
    pub fn corner_code(&self, index: usize, parity: Parity) -> usize {
        let off = parity.base_offset();
        let mut rest = index;
        let mut code = 0;
        for j in 0..self.dim {
            let x = rest % self.side;
            rest /= self.side;
            if x % 2 != off {
                code |= 1 << j;
            }
        }
        code
    }

    /// Shifts a block's base by `delta` along `axis`, modulo `L`.
    pub fn translate_block(&self, block: &BlockId, axis: usize, delta: usize) -> BlockId {
        let mut base = block.base.clone();
        base.0[axis] = (base.0[axis] + delta) % self.side;
        BlockId {
            parity: block.parity,
            base,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_geometry() {
        assert!(LatticeConfig::new(0, 4).is_err());
        assert!(LatticeConfig::new(2, 2).is_err());
        assert!(LatticeConfig::new(2, 5).is_err());
        assert!(LatticeConfig::new(64, 16).is_err());
        assert_eq!(LatticeConfig::new(3, 4).unwrap().volume(), 64);
    }

    #[test]
    fn index_examples() {
        let cfg = LatticeConfig::new(3, 32).unwrap();
        assert_eq!(cfg.vertex_index(&VertexCoords(vec![0, 0, 0])).unwrap(), 0);
        let cfg = LatticeConfig::new(3, 4).unwrap();
        assert_eq!(cfg.vertex_index(&VertexCoords(vec![1, 2, 3])).unwrap(), 57);
        assert!(matches!(
            cfg.vertex_index(&VertexCoords(vec![4, 0, 0])),
            Err(Error::OutOfBounds { axis: 0, .. })
        ));
        assert!(cfg.coords_of(64).is_err());
    }

    #[test]
    fn index_round_trip_exhaustive() {
        let cfg = LatticeConfig::new(3, 4).unwrap();
        for i in 0..cfg.volume() {
            let x = cfg.coords_of(i).unwrap();
            assert_eq!(cfg.vertex_index(&x).unwrap(), i);
        }
    }

    #[test]
    fn one_dimensional_blocks() {
        let cfg = LatticeConfig::new(1, 4).unwrap();
        let bases = |p| {
            cfg.enumerate_blocks(p)
                .into_iter()
                .map(|b| b.base.0[0])
                .collect::<Vec<_>>()
        };
        assert_eq!(bases(Parity::Odd), vec![0, 2]);
        assert_eq!(bases(Parity::Even), vec![1, 3]);

        let odd = BlockId {
            parity: Parity::Odd,
            base: VertexCoords(vec![2]),
        };
        assert_eq!(cfg.block_members(&odd), vec![2, 3]);
        let even = BlockId {
            parity: Parity::Even,
            base: VertexCoords(vec![3]),
        };
        assert_eq!(cfg.block_members(&even), vec![3, 0]);
    }

    fn assert_partition(cfg: &LatticeConfig, parity: Parity) {
        let blocks = cfg.enumerate_blocks(parity);
        assert_eq!(blocks.len(), cfg.volume() >> cfg.dim());
        let mut seen = vec![0u32; cfg.volume()];
        for b in &blocks {
            cfg.validate_block(b).unwrap();
            for m in cfg.block_members(b) {
                seen[m] += 1;
            }
        }
        assert!(
            seen.iter().all(|&n| n == 1),
            "{parity} blocks do not partition"
        );
    }

    #[test]
    fn blocks_partition_vertices() {
        for (d, l) in [(1, 4), (1, 8), (2, 4), (2, 6), (3, 4), (3, 6), (4, 4)] {
            let cfg = LatticeConfig::new(d, l).unwrap();
            assert_partition(&cfg, Parity::Odd);
            assert_partition(&cfg, Parity::Even);
        }
        let cfg = LatticeConfig::new(2, 4).unwrap();
        assert_eq!(cfg.enumerate_blocks(Parity::Odd).len(), 4);
        assert_eq!(cfg.enumerate_blocks(Parity::Even).len(), 4);
    }

    #[test]
    fn block_of_and_corner_code_agree_with_members() {
        let cfg = LatticeConfig::new(3, 6).unwrap();
        for parity in [Parity::Odd, Parity::Even] {
            for i in 0..cfg.volume() {
                let b = cfg.block_of(i, parity).unwrap();
                let code = cfg.corner_code(i, parity);
                assert_eq!(cfg.block_members(&b)[code], i);
            }
        }
    }

    #[test]
    fn translation_by_two_keeps_block_family() {
        let cfg = LatticeConfig::new(3, 6).unwrap();
        for b in cfg.enumerate_blocks(Parity::Odd) {
            for axis in 0..3 {
                let t = cfg.translate_block(&b, axis, 2);
                cfg.validate_block(&t).unwrap();
                let shifted: Vec<usize> = cfg
                    .block_members(&b)
                    .iter()
                    .map(|&m| cfg.neighbor(cfg.neighbor(m, axis, true), axis, true))
                    .collect();
                assert_eq!(cfg.block_members(&t), shifted);
            }
        }
    }

    #[test]
    fn neighbor_wraps() {
        let cfg = LatticeConfig::new(2, 4).unwrap();
        assert_eq!(cfg.neighbor(3, 0, true), 0);
        assert_eq!(cfg.neighbor(0, 0, false), 3);
        assert_eq!(cfg.neighbor(12, 1, true), 0);
        assert_eq!(cfg.neighbor(1, 1, false), 13);
    }
}
