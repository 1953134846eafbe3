//! Unfoldings of weighted digraphs, coverings of weighted graphs and the
//! decision procedures around them.

pub mod cover;
pub mod error;
pub mod graph;
pub mod iso;
pub mod partition;
pub mod spectra;
pub mod treecanon;
pub mod unfold;
pub mod weight;
pub mod witness;

pub use error::{Error, Result};
pub use graph::{Edge, Ends, Graph, GraphHom, RawDigraph, RawGraph, Violation, WeightedDigraph};
pub use partition::Partition;
pub use treecanon::CanonicalTree;
pub use weight::{Card, Weight};
