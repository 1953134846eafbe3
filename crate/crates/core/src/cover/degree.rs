use crate::error::{Error, Result};
use crate::graph::{Graph, GraphHom};
use crate::partition::Partition;
use crate::unfold::refine_labels;
use crate::weight::Card;

use super::covering::quotient_by;

/// Degree refinement of an unweighted graph: the coarsest partition in
/// which every vertex of class `i` has the same number `matrix[i][j]` of
/// neighbours in class `j`, counting a loop once and parallel edges
/// separately.
#[derive(Debug, Clone)]
pub struct DegreePartition {
    pub partition: Partition,
    pub matrix: Vec<Vec<usize>>,
    pub base: Graph,
    pub hom: GraphHom,
}

pub fn degree_partition(g: &Graph) -> Result<DegreePartition> {
    if !g.is_unit_weighted() {
        return Err(Error::Weighted);
    }
    let out = (0..g.vertex_count()).map(|v| g.half_edges(v).map(|(_, w, _)| (w, Card::one())).collect()).collect();
    let labels = refine_labels(&out).pop().unwrap();
    let partition = Partition::from_labels(g.vertices().to_vec(), &labels);
    let k = partition.len();
    let matrix = (0..k)
        .map(|i| {
            let mut row = vec![0; k];
            for (_, w, _) in g.half_edges(partition.representative(i)) {
                row[partition.block_index(w)] += 1;
            }
            row
        })
        .collect();
    let (base, hom) = quotient_by(g, &partition)?;
    Ok(DegreePartition { partition, matrix, base, hom })
}
