//! Shared workloads for the kernel benchmarks.

use stagwalk::{AmplitudeField, LatticeConfig, Walk, WalkParams};

/// A lattice, a prepared walk and a normalised non-uniform state on it.
pub struct Workload {
    pub cfg: LatticeConfig,
    pub walk: Walk,
    pub field: AmplitudeField,
}

impl Workload {
    pub fn new(d: usize, side: usize, s: f64, t1: usize) -> Workload {
        let cfg = LatticeConfig::new(d, side).expect("valid lattice");
        let walk = Walk::new(&cfg, &WalkParams::new(s, t1).expect("valid params")).expect("walk");
        let n = cfg.volume();
        let raw: Vec<f64> = (0..n).map(|i| ((i * 7919) % 1013) as f64 + 1.0).collect();
        let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
        let field = AmplitudeField::from_vec(&cfg, raw.into_iter().map(|x| x / norm).collect())
            .expect("field");
        Workload { cfg, walk, field }
    }

    pub fn label(&self) -> String {
        format!("d{}_L{}", self.cfg.dim(), self.cfg.side())
    }
}
