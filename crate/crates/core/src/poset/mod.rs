//! Arrangement posets: validation, ranks, truncations, induced
//! arrangements, chains and the boundary nerve.

mod arrangement;
mod bitset;
mod json;
mod nerve;

pub use arrangement::{
    Arrangement, ArrangementMeta, Chain, Chains, Family, Meet, OpenStrata, Space, Stratum,
};
pub use bitset::BitSet;
pub use nerve::SimplicialComplex;

use crate::error::Result;
use crate::hodge;

/// First violated arrangement invariant, naming the offending strata.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Diagnostic {
    #[error("stratum {id:?} has dimension {dim}, not below the ambient dimension {ambient}")]
    DimensionNotBelowAmbient { id: String, dim: u32, ambient: u32 },
    #[error("order relation has a cycle through {id:?} (not irreflexive/antisymmetric)")]
    OrderCycle { id: String },
    #[error("{lower:?} < {upper:?} but the dimension does not strictly increase")]
    DimensionNotMonotone { lower: String, upper: String },
    #[error("intersection or transverse meeting listed for comparable strata {a:?} and {b:?}")]
    IntersectionOnComparablePair { a: String, b: String },
    #[error("component {component:?} of {a:?} ∩ {b:?} is not below both")]
    ComponentNotContained {
        a: String,
        b: String,
        component: String,
    },
    #[error("components {first:?} and {second:?} of {a:?} ∩ {b:?} are comparable")]
    ComponentsComparable {
        a: String,
        b: String,
        first: String,
        second: String,
    },
    #[error("components {first:?} and {second:?} of {a:?} ∩ {b:?} are not disjoint")]
    ComponentsNotDisjoint {
        a: String,
        b: String,
        first: String,
        second: String,
    },
    #[error("{stratum:?} lies in {a:?} ∩ {b:?} but in none of its listed components")]
    IntersectionNotClosed {
        a: String,
        b: String,
        stratum: String,
    },
}

impl Arrangement {
    /// The arrangement of proper transforms after the blowups of stages
    /// `0..=r`: strata of rank above `r`, each carrying the Hodge polynomial
    /// of its proper transform, inside the stage-`r` blowup. Intersection
    /// components already blown up are separated away.
    pub fn transform_stage(&self, r: u32) -> Result<Arrangement> {
        self.validate()?;
        self.check_meetings()?;
        let keep: Vec<usize> = (0..self.len()).filter(|&i| self.rank(i) > r).collect();
        let hodges: Vec<_> = keep
            .iter()
            .map(|&i| hodge::dp_hodge(&self.below(i).truncate(r)))
            .collect();
        let ambient = hodge::dp_hodge(&self.truncate(r));
        Ok(self
            .restrict(&keep, self.ambient_dim(), ambient)
            .map_hodge(|i| hodges[i].clone()))
    }
}
