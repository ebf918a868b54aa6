//! Fusion categories over number fields and their Drinfeld centers.

pub mod center;
pub mod cli;
pub mod error;
pub mod fusion;
pub mod ideal;
pub mod io;
pub mod models;
pub mod morphism;
pub mod splitting;

pub use error::{FusionError, Result};
pub use fusion::{AssociatorData, FusionData, TensorLayout};
pub use morphism::{Morphism, Object};
