//! Adamson and Takasu relative homology, the comparison map between them,
//! the J obstruction and checks of the long exact sequence.

mod adamson;
mod coefficients;
mod comparison;
mod jmodule;
mod les;
mod oracle;

pub use adamson::{
    adamson_homology, takasu_homology, takasu_homology_bredon_from2, AdamsonComplex, TakasuEngine,
};
pub use coefficients::Coefficients;
pub use comparison::{
    comparison, comparison_maps, lift_inclusion, lift_is_chain_map, reference_lift_c4c2,
    ComparisonData, ReferenceLift,
};
pub use jmodule::{j_module, JEntry, JModuleReport};
pub use les::{verify_takasu_les, LesCertificate, LesSlot, ShapiroCheck, SlotKind};
pub use oracle::{normal_quotient_oracle, QuotientCheck};
