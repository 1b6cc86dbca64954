//! Enlarging the state space to an open interval without changing the
//! effective intervals.

use crate::error::{Error, Result};
use crate::measures::{DensitySegment, Interval, Primitive};

use super::validate::dirichlet_flags;
use super::DiffusionSpec;

/// Extends the state space past every closed finite endpoint, and past open
/// finite endpoints near which the speed measure is finite and no Dirichlet
/// condition is imposed. The speed measure is continued by Lebesgue measure.
/// An open endpoint with infinite speed mass nearby stays as it is. An open
/// endpoint carrying a Dirichlet condition cannot be removed and is an error.
pub fn extend_to_open(spec: &DiffusionSpec) -> Result<DiffusionSpec> {
    let state = *spec.state();
    let mut speed = spec.speed().clone();
    let (mut a, mut b) = (state.a(), state.b());
    let (mut left_closed, mut right_closed) = (state.left_closed(), state.right_closed());
    let flags: Vec<(bool, bool)> = spec.intervals().iter().map(|e| dirichlet_flags(spec, e)).collect();

    if state.a().is_finite() {
        let l = state.a();
        let extend = if state.left_closed() {
            true
        } else if flags.iter().any(|f| f.0) {
            return Err(Error::Precondition(format!(
                "(L0) holds at {l}: the absorbing boundary cannot be opened"
            )));
        } else {
            let probe = Interval::open(l, (l + 1.0).min(inner_point(&state)))?;
            speed.mass(&probe).is_finite()
        };
        if extend {
            speed.segments.push(DensitySegment {
                support: Interval::open(f64::NEG_INFINITY, l)?,
                primitive: Primitive::Constant(1.0),
            });
            a = f64::NEG_INFINITY;
            left_closed = false;
        }
    }
    if state.b().is_finite() {
        let r = state.b();
        let extend = if state.right_closed() {
            true
        } else if flags.iter().any(|f| f.1) {
            return Err(Error::Precondition(format!(
                "(R0) holds at {r}: the absorbing boundary cannot be opened"
            )));
        } else {
            let probe = Interval::open((r - 1.0).max(inner_point(&state)), r)?;
            speed.mass(&probe).is_finite()
        };
        if extend {
            speed.segments.push(DensitySegment {
                support: Interval::open(r, f64::INFINITY)?,
                primitive: Primitive::Constant(1.0),
            });
            b = f64::INFINITY;
            right_closed = false;
        }
    }
    let new_state = Interval::new(a, b, left_closed, right_closed)?;
    speed.carrier = new_state;
    Ok(spec.with_state_and_speed(new_state, speed))
}

fn inner_point(state: &Interval) -> f64 {
    state.default_base_point()
}
