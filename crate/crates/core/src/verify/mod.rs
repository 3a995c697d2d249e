//! Exact evaluation on rational configurations and identity checks.

mod checks;
mod config;
mod naming;
mod schur;
mod special;

pub use checks::{
    concurrent_lines_point, eval_on_point, explicit_relations, evaluate_variable, point_rng, positivity_check,
    reconstruct_plucker, short_plucker_relation, toric_roundtrip, verify_compound_determinants,
    verify_exchange_on_points, verify_explicit_relations, verify_exploration_exchanges,
    verify_identity, Identity, Report,
};
pub use config::{det, totally_positive_point, ConfigMatrix, PluckerVector};
pub use naming::{fingerprint_of, name_variables, Naming};
pub use schur::{lambda_of, random_schur_instance, schur_eval, verify_schur_analogue, SchurInstance};
pub use special::{
    catalog, signed_pluecker, special_function, translate, toral_weight, triple, Dihedral, NamedFunction,
    Special, Vec3,
};

use thiserror::Error;

use crate::algebra::VarId;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VerifyError {
    #[error("expected {expected} indices, got {got}")]
    BadArity { expected: usize, got: usize },
    #[error("index {0} out of range")]
    BadIndex(usize),
    #[error("parameters must be positive and strictly increasing")]
    ParametersNotIncreasing,
    #[error("chart is singular at this point: {0} vanishes")]
    ChartSingular(VarId),
    #[error("{0} has no value at this point")]
    Missing(VarId),
    #[error("pairs do not cross")]
    NotCrossing,
    #[error("no name found for {0}")]
    Unnamed(VarId),
    #[error("{0}")]
    Parse(String),
}
