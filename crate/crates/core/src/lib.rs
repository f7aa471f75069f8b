//! Quantum spatial search with the staggered-fermion Dirac walk on
//! periodic hypercubic lattices.
//!
//! The walk alternates two block-diagonal rotations, one per family of
//! elementary hypercubes, and the search interleaves `t1` walk steps with a
//! sign-flip oracle on the marked vertices. All amplitudes are real.
//!
//! - [`lattice`]: vertex indexing and the odd/even block partition
//! - [`dirac`]: block Hamiltonians and their exact exponentials
//! - [`evolve`]: the in-place block kernel, search runs and diagnostics
//! - [`tune`]: peak detection and parameter scans
//! - [`fitting`]: least-squares scaling fits
//! - [`refcheck`]: dense reference operators for small lattices

pub mod dirac;
pub mod error;
pub mod evolve;
pub mod export;
pub mod fitting;
pub mod lattice;
pub mod refcheck;
pub mod reference;
pub mod tune;

pub use error::{Error, Result};
pub use evolve::{
    apply_oracle, marked_probability, return_amplitude, run_search, AmplitudeField, MarkedSet,
    SearchOutcome, SearchTrace, StopRule, Walk, WalkParams,
};
pub use fitting::{FitModel, FitResult, ScalingSample};
pub use lattice::{BlockId, LatticeConfig, Parity, VertexCoords};
pub use tune::{PeakResult, ScanResult};
