//! Orbit categories, coefficient systems and Bredon homology of finite
//! G-CW data.

mod category;
mod gcw;

pub use category::{CoefficientSystem, Morphism, OrbitCategory, Variance};
pub use gcw::{
    bredon_complex, bredon_homology, diagonal_coinvariant_homology, quotient_homology,
    reflection_circle, takasu_pair_complex, CellJson, GCWData, GcwJson, GCW_FORMAT_VERSION,
};
