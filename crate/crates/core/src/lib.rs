//! Exact cohomology engine for finite models of transversely holomorphic foliations.

pub mod algebra;
pub mod analysis;
pub mod cli;
pub mod cohomology;
pub mod error;
pub mod foliation;
pub mod hodge;
pub mod linalg;
pub mod model;
pub mod report;
pub mod scalar;

pub use error::{FolError, Result};
