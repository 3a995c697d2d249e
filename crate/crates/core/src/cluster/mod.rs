//! Exchange matrices, seeds, mutation and exchange-graph exploration.

mod cache;
mod explore;
mod matrix;
pub mod modp;
mod registry;
mod seed;

pub use cache::{read_cache, write_cache, MAGIC};
pub use explore::{explore, ExchangeGraph, Exploration, ExploreOptions, ExploreStats, SeedRecord};
pub use matrix::{check_skew_symmetrizable, mutate_square, ExtMatrix};
pub use registry::{RegistryStats, VarRecord, VariableRegistry};
pub use seed::{ExchangeRelation, Mutation, Seed};

use thiserror::Error;

use crate::algebra::{AlgebraError, VarId};

#[derive(Debug, Error)]
pub enum ClusterError {
    #[error("{0} is frozen")]
    NotMutable(VarId),
    #[error("{0} is not a label of this seed")]
    UnknownVariable(VarId),
    #[error("exchange at {var} is not Laurent: {source}")]
    LaurentViolation { var: VarId, source: AlgebraError },
    #[error("vertex {0} out of range")]
    BadIndex(usize),
    #[error("fingerprint of {0} vanishes at a probe point")]
    FingerprintDegenerate(VarId),
    #[error("fingerprint collision at {0}")]
    FingerprintCollision(VarId),
    #[error("same cluster, different matrices: {0}")]
    SeedMismatch(String),
    #[error("principal part lost skew-symmetry")]
    NotSkewSymmetric,
    #[error("cache format: {0}")]
    CacheFormat(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
