//! Inputs shared by the benchmarks.

use grascluster_core::cluster::modp::ProbeMatrices;
use grascluster_core::comb::build_initial_seed;
use grascluster_core::{explore, Exploration, ExploreOptions, Seed, VariableRegistry};

pub const PROBE_SEED: u64 = 17;

/// Arrangement seed of `G(k,n)` and a registry holding only its Plücker coordinates.
pub fn fresh(k: usize, n: usize) -> (Seed, VariableRegistry) {
    let s0 = build_initial_seed(k, n).expect("valid shape");
    let probes = ProbeMatrices::new(k, n, PROBE_SEED);
    let reg = VariableRegistry::grassmannian(s0.matrix.row_labels(), &probes);
    (s0, reg)
}

pub fn explored(k: usize, n: usize) -> (VariableRegistry, Exploration) {
    let (s0, mut reg) = fresh(k, n);
    let exp = explore(&s0, &mut reg, &ExploreOptions::default()).expect("exploration");
    (reg, exp)
}
