//! Ready-made systems used throughout the docs, examples and tests.

use crate::dirichlet::{DiffusionSpec, GapFamily};
use crate::error::Result;
use crate::measures::{CantorCascade, CantorComponent, CantorKind, CantorSet, Interval, MeasureSpec};
use crate::scale::{ClosedForm, ScaleFunction};

fn half_line_left() -> Interval {
    Interval::new(f64::NEG_INFINITY, 0.0, false, true).expect("valid")
}

fn half_line_right_from_one() -> Interval {
    Interval::new(1.0, f64::INFINITY, true, false).expect("valid")
}

/// Brownian motion on `(0, 1)` killed at both ends.
pub fn absorbing_brownian_motion() -> Result<DiffusionSpec> {
    let unit = Interval::open(0.0, 1.0)?;
    Ok(DiffusionSpec::with_lebesgue_speed(unit).with_interval(ScaleFunction::natural(unit)?))
}

/// State `[0, 1]` with the single effective interval `(0, 1)` and natural
/// scale: the closed ends are traps next to a finite scale limit, which
/// breaks adaptedness.
pub fn unadapted_open_interval() -> Result<DiffusionSpec> {
    let state = Interval::closed(0.0, 1.0)?;
    let j = Interval::open(0.0, 1.0)?;
    Ok(DiffusionSpec::with_lebesgue_speed(state).with_interval(ScaleFunction::natural(j)?))
}

/// Reflecting Brownian motion on `[0, 1]` with speed density `lo` on
/// `[0, 1/2]` and `hi` on `(1/2, 1]`.
pub fn reflecting_two_level(lo: f64, hi: f64) -> Result<DiffusionSpec> {
    let unit = Interval::closed(0.0, 1.0)?;
    let speed = MeasureSpec::zero(unit)
        .with_density(Interval::closed(0.0, 0.5)?, crate::measures::Primitive::Constant(lo))?
        .with_density(Interval::new(0.5, 1.0, false, true)?, crate::measures::Primitive::Constant(hi))?;
    Ok(DiffusionSpec::new(unit, speed).with_interval(ScaleFunction::natural(unit)?))
}

/// Bessel process of dimension `d` on `[0, inf)` with `e = 1`: log scale for
/// `d = 2`, `(x^(2-d) - 1) / (2-d)` otherwise.
pub fn bessel(d: f64) -> Result<DiffusionSpec> {
    let state = Interval::new(0.0, f64::INFINITY, true, false)?;
    let j = Interval::open(0.0, f64::INFINITY)?;
    let form = if d == 2.0 {
        ClosedForm::Log
    } else {
        ClosedForm::Power { alpha: 2.0 - d }
    };
    let speed = MeasureSpec::zero(state).with_density(
        state,
        crate::measures::Primitive::Power {
            coef: 1.0,
            center: 0.0,
            exponent: d - 1.0,
        },
    )?;
    Ok(DiffusionSpec::new(state, speed).with_interval(ScaleFunction::closed(j, form, Some(1.0))?))
}

/// `(-inf, 0]` with natural scale next to `(0, inf)` with `s(x) = -exp(1/x)`.
pub fn split_line_exp_recip() -> Result<DiffusionSpec> {
    let right = Interval::open(0.0, f64::INFINITY)?;
    Ok(DiffusionSpec::with_lebesgue_speed(Interval::real_line())
        .with_interval(ScaleFunction::natural(half_line_left())?)
        .with_interval(ScaleFunction::closed(right, ClosedForm::NegExpRecip, None)?))
}

fn cantor_gap_system(set: CantorSet, coef: f64, exponent: f64) -> Result<DiffusionSpec> {
    Ok(DiffusionSpec::with_lebesgue_speed(Interval::real_line())
        .with_interval(ScaleFunction::natural(half_line_left())?)
        .with_interval(ScaleFunction::natural(half_line_right_from_one())?)
        .with_family(GapFamily::new(set, coef, exponent)?))
}

/// Closed gaps of the middle-thirds Cantor set in `[0, 1]` and the two outer
/// half-lines, all with natural scale: a reflected Brownian motion on each
/// piece, Cantor points are traps.
pub fn cantor_gap_extension() -> Result<DiffusionSpec> {
    cantor_gap_system(CantorSet::standard(0.0, 1.0)?, 1.0, 0.0)
}

/// As [`cantor_gap_extension`], with unit scale mass on every gap.
pub fn cantor_gap_unit_mass() -> Result<DiffusionSpec> {
    cantor_gap_system(CantorSet::standard(0.0, 1.0)?, 1.0, -1.0)
}

/// The Cantor set with middle fractions `1/2, 1/4, 1/8, ...`, which has
/// positive length.
pub fn fat_cantor_set() -> Result<CantorSet> {
    CantorSet::new(
        0.0,
        1.0,
        CantorKind::Fat {
            removed: vec![0.5, 0.25],
            tail_ratio: 0.5,
        },
    )
}

/// As [`cantor_gap_extension`] with a Cantor set of positive length.
pub fn fat_cantor_gap_extension() -> Result<DiffusionSpec> {
    cantor_gap_system(fat_cantor_set()?, 1.0, 0.0)
}

/// `(0, 1]` in the real line with `ds = dx + sum_p dc_p`, where `dc_p` is the
/// Cantor measure carried to `(2^-p, 2^(1-p))`. The singular part forces
/// `s(0+) = -inf`.
pub fn cantor_augmented_scale() -> Result<DiffusionSpec> {
    let j = Interval::new(0.0, 1.0, false, true)?;
    let first = CantorComponent::new(CantorSet::standard(0.5, 1.0)?, 1.0)?;
    let cascade = CantorCascade::new(first, 0.0, 0.5, 1.0, None)?;
    let ds = MeasureSpec::lebesgue(j).with_cascade(cascade);
    Ok(DiffusionSpec::with_lebesgue_speed(Interval::real_line())
        .with_interval(ScaleFunction::from_measure(j, None, ds)?))
}
