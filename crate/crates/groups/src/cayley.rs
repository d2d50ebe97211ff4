use hst_graph::{GraphError, NeighborOracle};

use crate::error::GroupError;
use crate::group::{Elem, MarkedGroup};

/// Cayley graph of a marked group with respect to a finite symmetric set of
/// elements (right multiplication). Vertices are canonical normal forms.
#[derive(Clone, Debug)]
pub struct CayleyGraph {
    group: MarkedGroup,
    names: Vec<String>,
    gens: Vec<Elem>,
    inverses: Vec<Elem>,
}

impl CayleyGraph {
    /// Uses the group's own generators.
    pub fn standard(group: &MarkedGroup) -> Self {
        let names = group.names();
        Self::with_generators(group, names.into_iter().zip(group.generators()).collect())
            .expect("standard generators are nontrivial and distinct")
    }

    /// Identity elements are rejected; an element equal to an earlier one
    /// or to its inverse is dropped, keeping the first name.
    pub fn with_generators(group: &MarkedGroup, named: Vec<(String, Elem)>) -> Result<Self, GroupError> {
        let mut names = Vec::new();
        let mut gens: Vec<Elem> = Vec::new();
        let mut inverses: Vec<Elem> = Vec::new();
        for (name, g) in named {
            group.check(&g)?;
            if group.is_identity(&g) {
                return Err(GroupError::Invalid(format!("generator {name} is trivial")));
            }
            if gens.contains(&g) || inverses.contains(&g) {
                continue;
            }
            inverses.push(group.inv(&g));
            gens.push(g);
            names.push(name);
        }
        Ok(CayleyGraph { group: group.clone(), names, gens, inverses })
    }

    pub fn group(&self) -> &MarkedGroup {
        &self.group
    }

    pub fn generator_names(&self) -> &[String] {
        &self.names
    }

    pub fn generators(&self) -> &[Elem] {
        &self.gens
    }

    pub fn identity(&self) -> Elem {
        self.group.identity()
    }
}

impl NeighborOracle for CayleyGraph {
    type Vertex = Elem;

    fn label(&self, v: &Elem) -> String {
        self.group.format(v)
    }

    fn neighbors(&self, v: &Elem) -> Result<Vec<Elem>, GraphError> {
        Ok(self
            .gens
            .iter()
            .zip(&self.inverses)
            .flat_map(|(s, t)| [self.group.mul(v, s), self.group.mul(v, t)])
            .collect())
    }
}
