//! Symmetric one-dimensional diffusions described by their Dirichlet-form
//! data: effective intervals, adapted scale functions, a speed measure and an
//! optional killing measure.

pub mod error;
pub mod extended;
pub mod gallery;
pub mod measures;
pub mod scale;
pub mod dirichlet;
pub mod smoothcore;
pub mod simulate;
pub mod cli;
mod quad;

pub use error::{Error, Result};
pub use extended::ExtReal;
