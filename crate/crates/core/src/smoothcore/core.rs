//! When compactly supported smooth functions form a special standard core.

use std::fmt;

use crate::error::Result;

use super::connection::{connection_graph, ConnectionGraph};
use super::containment::{contains_smooth, SmoothVerdict};
use crate::dirichlet::DiffusionSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoreAnswer {
    Yes,
    No,
    /// Smooth functions are not even in the domain.
    NotContained,
}

impl fmt::Display for CoreAnswer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoreAnswer::Yes => "YES",
            CoreAnswer::No => "NO",
            CoreAnswer::NotContained => "NOT CONTAINED",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoreVerdict {
    pub answer: CoreAnswer,
    pub smooth: SmoothVerdict,
    /// Per explicit interval: the scale measure has no singular part.
    pub absolutely_continuous: Vec<bool>,
    /// Classes under connection by the full scale measures.
    pub graph: ConnectionGraph,
}

impl CoreVerdict {
    pub fn condition_one(&self) -> bool {
        self.absolutely_continuous.iter().all(|&b| b)
    }

    pub fn condition_two(&self) -> bool {
        self.graph.all_singletons()
    }
}

/// Both core conditions: every scale is absolutely continuous, and every
/// effective interval is scale-isolated. Checked on the default window.
pub fn is_special_standard_core(spec: &DiffusionSpec) -> Result<CoreVerdict> {
    let smooth = contains_smooth(spec, &spec.default_window())?;
    let absolutely_continuous: Vec<bool> = spec
        .explicit_scales()
        .iter()
        .map(|s| s.is_absolutely_continuous())
        .collect();
    let graph = connection_graph(spec, false);
    let answer = if !smooth.contained {
        CoreAnswer::NotContained
    } else if absolutely_continuous.iter().all(|&b| b) && graph.all_singletons() {
        CoreAnswer::Yes
    } else {
        CoreAnswer::No
    };
    Ok(CoreVerdict {
        answer,
        smooth,
        absolutely_continuous,
        graph,
    })
}
