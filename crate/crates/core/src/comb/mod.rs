//! k-subsets, polygon triangulations, weak separation and the `A_{k,n}` seed.

mod akn;
mod ksubset;
mod polygon;
mod seeds;
mod weak;
mod words;

pub use akn::{akn_closed_form_labels, akn_labels, zigzag_chain, AknLabels};
pub use ksubset::{all_ksubsets, cyc, cyc_i, KSubset};
pub use polygon::{
    chords_cross, enumerate_triangulations, fan_triangulation, zigzag_triangulation, Chord,
    Triangulation,
};
pub use seeds::{
    build_initial_seed, exchange_sign_matrix, numbered_seed, plabic_quiver, seed_from_collection,
    triangulation_seed, NumberedSeed,
};
pub use weak::{
    enumerate_maximal_ws, frozen_intervals, unique_exchange, weakly_separated, Exchange,
    WSCollection,
};
pub use words::{double_reduced_word, is_reduced_for_longest, DoubleWord};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CombError {
    #[error("ambient size {0} outside [1, 64]")]
    BadAmbient(usize),
    #[error("index {index} outside [1..{n}]")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("index {0} repeated")]
    RepeatedIndex(usize),
    #[error("empty subset")]
    Empty,
    #[error("cannot parse {0:?}")]
    Parse(String),
    #[error("need n >= k + 2 >= 4, got k={k}, n={n}")]
    BadShape { k: usize, n: usize },
    #[error("{0} is frozen")]
    Frozen(KSubset),
    #[error("{0} is not in the collection")]
    NotInCollection(KSubset),
    #[error("{0} admits no (2,4)-exchange")]
    NoExchange(KSubset),
    #[error("{0} admits more than one (2,4)-exchange")]
    Ambiguous(KSubset),
    #[error("sign propagation inconsistent at {0} / {1}")]
    SignConflict(KSubset, KSubset),
    #[error("instance too large: k(n-k) = {0} exceeds cap {1}")]
    CapExceeded(usize, usize),
    #[error("not a triangulation: {0}")]
    BadTriangulation(String),
    #[error("no seed data for G({k},{n})")]
    NoNumberedSeed { k: usize, n: usize },
}

/// The Grassmann permutation `i ↦ i + k (mod n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GrassmannPermutation {
    pub k: usize,
    pub n: usize,
}

impl GrassmannPermutation {
    pub fn apply(&self, i: usize) -> usize {
        cyc(self.n, i + self.k)
    }

    pub fn images(&self) -> Vec<usize> {
        (1..=self.n).map(|i| self.apply(i)).collect()
    }
}
