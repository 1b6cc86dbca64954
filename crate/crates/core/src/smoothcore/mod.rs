//! Smooth functions and the form: containment, the core criterion, Hamza's
//! closability test and the closure of smooth functions.

mod connection;
mod containment;
mod core;
mod hamza;
mod merge;

pub use self::core::{is_special_standard_core, CoreAnswer, CoreVerdict};
pub use connection::{connection_graph, lambda_l, lambda_s, scale_connected, ConnectionGraph, ConnectionWitness};
pub use containment::{clip_window, contains_smooth, SmoothItem, SmoothVerdict};
pub use hamza::{
    hamza_closable, intervals_from_density, regular_set, regular_set_numeric, HamzaDensity, HamzaVerdict,
    NumericRegularSet, NUMERIC_DIVERGENCE_THRESHOLD,
};
pub use merge::{cinf_merge, MergeResult, MergedInterval};

#[cfg(test)]
mod tests;
