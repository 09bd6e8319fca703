use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactla::IntMatrix;
use crate::groups::{FiniteGroup, Subgroup};
use crate::modres::GModule;

/// Coefficient modules accepted by jobs.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Coefficients {
    #[default]
    #[serde(rename = "trivial_Z")]
    TrivialZ,
    #[serde(rename = "trivial_Zmod")]
    TrivialZmod {
        k: u64,
    },
    /// `Z[G/K]` for `K` generated by the listed elements.
    Perm {
        generators: Vec<usize>,
    },
    Regular,
    /// Action matrices (as rows) of the listed group elements.
    Custom {
        elements: Vec<usize>,
        matrices: Vec<Vec<Vec<i64>>>,
    },
}

impl Coefficients {
    pub fn is_constant(&self) -> bool {
        matches!(
            self,
            Coefficients::TrivialZ | Coefficients::TrivialZmod { .. }
        )
    }

    pub fn build(&self, g: &FiniteGroup) -> Result<GModule> {
        match self {
            Coefficients::TrivialZ => Ok(GModule::trivial(g)),
            Coefficients::TrivialZmod { k } => GModule::trivial_mod(g, *k),
            Coefficients::Perm { generators } => {
                Ok(GModule::permutation(&Subgroup::generated(g, generators)?))
            }
            Coefficients::Regular => Ok(GModule::regular(g)),
            Coefficients::Custom { elements, matrices } => {
                if matrices.is_empty() {
                    return Err(Error::Invalid(
                        "custom coefficients need at least one matrix".into(),
                    ));
                }
                let mats: Vec<IntMatrix> =
                    matrices.iter().map(|m| IntMatrix::from_rows(m)).collect();
                GModule::from_generators(g, elements, &mats, None, "custom")
            }
        }
    }
}
