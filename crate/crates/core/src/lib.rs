//! Exact cluster-algebra computations on Grassmannian coordinate rings.

pub mod algebra;
pub mod classify;
pub mod cluster;
pub mod comb;
pub mod verify;

pub use algebra::{LaurentPoly, Monomial, Rat, VarId};
pub use cluster::{explore, ExchangeGraph, Exploration, ExploreOptions, ExtMatrix, Seed, VariableRegistry};
pub use comb::{KSubset, WSCollection};
