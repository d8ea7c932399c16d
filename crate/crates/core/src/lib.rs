//! Fusion systems, centric linking systems, double Burnside modules and
//! mod-p invariant rings for small finite groups.

pub mod burnside;
pub mod error;
pub mod exec;
pub mod fusion;
pub mod group;
pub mod linalg;
pub mod linking;
pub mod steenrod;

pub use error::{Error, Result};
