use crate::error::{Error, Result};

use super::DiffusionSpec;

/// Probability that the diffusion started at `x` reaches `right` before
/// `left`: the scale ratio `(s(x) - s(left)) / (s(right) - s(left))`.
/// Targets may be endpoints of the effective interval, in which case the
/// scale limits are used. Traps never move, so the answer there is `0`.
pub fn hitting_probability(spec: &DiffusionSpec, x: f64, left: f64, right: f64) -> Result<f64> {
    if !(left < x && x < right) {
        return Err(Error::Precondition(format!("need left < x < right, got {left}, {x}, {right}")));
    }
    let e = match spec.interval_at(x) {
        Some(e) => e,
        None => {
            if spec.state().contains(x) {
                return Ok(0.0);
            }
            return Err(Error::OutOfDomain {
                x,
                domain: spec.state().to_string(),
            });
        }
    };
    let j = e.interval;
    if left < j.a() || right > j.b() {
        return Err(Error::SpansIntervals(format!(
            "targets {left}, {right} leave the effective interval {j} of {x}"
        )));
    }
    let s = &e.scale;
    let (sl, sr, sx) = (s.eval(left)?, s.eval(right)?, s.eval(x)?);
    match (sl.is_neg_inf(), sr.is_pos_inf()) {
        (true, true) => Err(Error::Precondition(format!(
            "both targets {left} and {right} are at infinite scale distance"
        ))),
        (true, false) => Ok(1.0),
        (false, true) => Ok(0.0),
        (false, false) => {
            let (l, r, v) = (sl.to_f64(), sr.to_f64(), sx.to_f64());
            Ok(((v - l) / (r - l)).clamp(0.0, 1.0))
        }
    }
}
