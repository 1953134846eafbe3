use crate::error::{Error, Result};
use crate::graph::Graph;

use super::covering_equivalence;

/// Whether an anonymous network can elect a leader: every node must have a
/// universal cover view no other node shares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Election {
    pub solvable: bool,
    /// Blocks of mutually indistinguishable nodes, each of size ≥ 2.
    pub ambiguous_classes: Vec<Vec<String>>,
}

pub fn election_check(n: &Graph) -> Result<Election> {
    n.require_connected()?;
    if !n.is_unit_weighted() {
        return Err(Error::Weighted);
    }
    let ambiguous_classes: Vec<Vec<String>> =
        covering_equivalence(n).block_ids().into_iter().filter(|b| b.len() > 1).collect();
    Ok(Election { solvable: ambiguous_classes.is_empty(), ambiguous_classes })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::graph::RawGraph;

    #[test]
    fn pentagon_is_symmetric() {
        let e = election_check(&cycle(5)).unwrap();
        assert!(!e.solvable);
        assert_eq!(e.ambiguous_classes.len(), 1);
        assert_eq!(e.ambiguous_classes[0].len(), 5);
    }

    #[test]
    fn looped_path_elects() {
        let n = RawGraph::weighted()
            .vertices(["x", "y", "z"])
            .edge("xy", "x", "y")
            .edge("yz", "y", "z")
            .edge("l", "x", "x")
            .build()
            .unwrap();
        assert_eq!(election_check(&n).unwrap(), Election { solvable: true, ambiguous_classes: vec![] });
    }

    #[test]
    fn single_edge_is_stuck() {
        let n = RawGraph::weighted().vertices(["x", "y"]).edge("e", "x", "y").build().unwrap();
        let e = election_check(&n).unwrap();
        assert_eq!(e.ambiguous_classes, vec![vec!["x".to_string(), "y".into()]]);
    }

    #[test]
    fn refusals() {
        let split = RawGraph::weighted().vertices(["x", "y"]).build().unwrap();
        assert_eq!(election_check(&split).unwrap_err(), Error::Disconnected);
        assert_eq!(election_check(&edge43()).unwrap_err(), Error::Weighted);
    }
}
