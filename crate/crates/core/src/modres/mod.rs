//! Modules over group rings, permutation complexes, free resolutions,
//! tensor products and equivariant lifts.

mod lift;
mod module;
mod perm;
mod resolution;
mod tensor;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use lift::{lift_resolution, tensor_lift, Lift};
pub use module::{
    standard_modules, Coinvariants, GModule, GModuleHom, Presentation, StandardModules,
};
pub use perm::{Face, OrbitCell, PermComplex};
pub use resolution::{
    bar_resolution, cyclic_resolution, induce_resolution, resolve, takasu_resolution,
    FreeResolution, Normalization, RingColumn,
};
pub use tensor::{group_homology, tensor, TensorComplex};

/// Caps on the size of generated objects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Largest allowed rank of an underlying free abelian group in one degree.
    pub max_rank: usize,
    /// Largest homological degree a resolution may be asked for.
    pub max_degree: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_rank: 5000,
            max_degree: 6,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_rank: usize::MAX,
            max_degree: usize::MAX,
        }
    }

    pub fn with_max_rank(mut self, max_rank: usize) -> Self {
        self.max_rank = max_rank;
        self
    }

    pub fn check_rank(&self, what: &str, rank: usize) -> Result<()> {
        if rank > self.max_rank {
            return Err(Error::Budget {
                what: what.to_string(),
                requested: rank,
                cap: self.max_rank,
            });
        }
        Ok(())
    }

    pub fn check_degree(&self, what: &str, degree: usize) -> Result<()> {
        if degree > self.max_degree {
            return Err(Error::Budget {
                what: format!("{what} (degree)"),
                requested: degree,
                cap: self.max_degree,
            });
        }
        Ok(())
    }
}
