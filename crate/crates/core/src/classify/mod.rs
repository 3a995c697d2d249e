//! Dynkin and affine recognition, root systems, and the correspondence tables.

mod affine;
mod quiver;
mod roots;
mod tables;

pub use affine::{
    canonical_form, find_affine_certificate, find_affine_subgraph, find_dynkin_path,
    induced_affine, AffineKind, AffineWitness,
};
pub use quiver::{dynkin_shape, recognize_dynkin, CartanSpec, DynkinType, Quiver, Sign};
pub use roots::{
    almost_positive_roots, cluster_count, exponents_from_heights, is_almost_positive,
    positive_roots, tau, tau_orbits, RootVec,
};
pub use tables::{
    analyze_finite, case_shape, correspondence_check, denominator_vectors, fixture,
    parse_table, parse_translate_name, toral_weight_of, CorrespondenceReport, FiniteCase,
    TableRow, PROBE_SEED,
};

use thiserror::Error;

use crate::algebra::VarId;
use crate::cluster::ClusterError;
use crate::comb::CombError;
use crate::verify::VerifyError;

#[derive(Debug, Error)]
pub enum ClassifyError {
    #[error("{0} has a non-homogeneous expansion")]
    NotHomogeneous(VarId),
    #[error("seed is not of Dynkin type")]
    NotDynkin,
    #[error("bad table row: {0}")]
    Fixture(String),
    #[error(transparent)]
    Cluster(#[from] ClusterError),
    #[error(transparent)]
    Comb(#[from] CombError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
}

/// Outcome of classifying a mutation class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    /// Mutation path (0-based) to a Dynkin quiver.
    Finite { path: Vec<usize>, spec: CartanSpec },
    Infinite(AffineWitness),
    /// Nothing found within the caps.
    Unknown,
}

/// Searches the mutation class of `b0` for a Dynkin quiver or an affine
/// certificate, whichever comes first (a class cannot contain both).
pub fn classify_matrix(b0: &[Vec<i32>], depth_cap: usize, max_nodes: usize) -> Classification {
    let mut cls = Classification::Unknown;
    affine::search_class(b0, depth_cap, max_nodes, |b, path| {
        if let Some(spec) = recognize_dynkin(&Quiver::from_square(b.to_vec())) {
            cls = Classification::Finite {
                path: path.to_vec(),
                spec,
            };
            return true;
        }
        if let Some((vertices, kind)) = find_affine_subgraph(b) {
            cls = Classification::Infinite(AffineWitness {
                path: path.to_vec(),
                matrix: b.to_vec(),
                vertices,
                kind,
            });
            return true;
        }
        false
    });
    cls
}
