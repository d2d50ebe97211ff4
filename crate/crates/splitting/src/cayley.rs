use hst_graph::{grow_ball, GraphError, GrownBall, NeighborOracle};

use crate::error::SplitError;
use crate::spec::{GElem, Splitting};

impl NeighborOracle for Splitting {
    type Vertex = GElem;

    fn label(&self, v: &GElem) -> String {
        Splitting::label(self, v)
    }

    fn neighbors(&self, v: &GElem) -> Result<Vec<GElem>, GraphError> {
        let mut out = Vec::with_capacity(2 * self.generators().len());
        for g in self.generators() {
            out.push(self.mul(v, &g.elem)?);
            out.push(self.mul(v, &g.inverse)?);
        }
        Ok(out)
    }
}

/// Ball of radius `radius` around `center` in the Cayley graph of the split
/// group.
pub fn cayley_window(
    split: &Splitting,
    center: &GElem,
    radius: u32,
    budget: Option<usize>,
) -> Result<GrownBall<GElem>, SplitError> {
    Ok(grow_ball(split, center, radius, budget)?)
}
