//! Coverings of weighted graphs.
//!
//! Universal covers are compared through the symmetric digraph of a graph
//! ([`sym`]), whose unfolding refinement decides covering equivalence.
//! Constructions that produce new graphs name vertices and edges by tuples
//! of the ids they come from, such as `(x,1)` or `(e,f)`.

mod covering;
mod degree;
mod election;
mod finite;
mod kronecker;
mod pullback;
mod sym;

pub use covering::{
    covering_equivalence, fuse, is_covering, minimize, norris_uc_crosscheck, same_uc_routes, same_universal_cover,
};
pub use degree::{degree_partition, DegreePartition};
pub use election::{election_check, Election};
pub use finite::{build_finite_cover, finite_cover_solve, CoverSolveResult, FailureCycle, FiniteCover};
pub use kronecker::{kronecker_k2, kronecker_lift};
pub use pullback::{common_cover_pullback, CommonCover, Pullback};
pub use sym::{sym, uc_truncate, ArcKind, SymDigraph};

use crate::error::{Error, Result};
use crate::graph::{Graph, RawGraph, Violation};

/// Builds a graph whose ids were generated from tuples; duplicate ids mean
/// two different tuples rendered to the same string.
pub(crate) fn build_generated(raw: &RawGraph) -> Result<Graph> {
    raw.build().map_err(|e| match e {
        Error::Invalid(v) => {
            let dup = v.iter().find_map(|x| match x {
                Violation::DuplicateVertex(s) | Violation::DuplicateEdge(s) => Some(s.clone()),
                _ => None,
            });
            match dup {
                Some(s) => Error::IdCollision(s),
                None => Error::Invalid(v),
            }
        }
        other => other,
    })
}
