//! Exact computation of relative group homology for pairs of finite groups.

pub mod bredon;
pub mod error;
pub mod exactla;
pub mod groups;
pub mod modres;
pub mod relhom;

pub use error::{Error, Result};
