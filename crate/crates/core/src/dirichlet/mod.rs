//! Effective-interval systems: the data of a regular local Dirichlet form on
//! an interval, its validation, boundary behavior and energy.

mod energy;
mod extend;
mod hitting;
mod subspace;
mod validate;

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::measures::{CantorSet, Interval, MeasureSpec};
use crate::scale::{ClosedForm, ScaleFunction};

pub use energy::{energy, energy_spatial, in_domain, DomainCheck, EnergyReport, ScalePiece, TestFunction};
pub use extend::extend_to_open;
pub use hitting::hitting_probability;
pub use subspace::{is_dirichlet_subspace, SubspaceVerdict};
pub use validate::{
    boundary_classification, validate, BoundaryKind, BoundaryVerdict, Check, CheckStatus, ValidationReport,
};

/// Default number of Cantor generations materialized as explicit intervals.
pub const DEFAULT_TRUNCATION_DEPTH: u32 = 12;

/// Infinitely many effective intervals: the closed gaps of a Cantor set, each
/// carrying the linear scale with `ds = coef * |g|^exponent dx` on gap `g`.
#[derive(Debug, Clone, PartialEq)]
pub struct GapFamily {
    pub set: CantorSet,
    pub coef: f64,
    pub exponent: f64,
}

impl GapFamily {
    pub fn new(set: CantorSet, coef: f64, exponent: f64) -> Result<Self> {
        if !(coef > 0.0 && coef.is_finite() && exponent.is_finite()) {
            return Err(Error::InvalidScale(format!("gap scale coefficient {coef} must be positive")));
        }
        Ok(GapFamily { set, coef, exponent })
    }

    pub fn slope(&self, gap: (f64, f64)) -> f64 {
        self.coef * (gap.1 - gap.0).powf(self.exponent)
    }

    pub fn scale_on(&self, gap: (f64, f64)) -> Result<ScaleFunction> {
        let interval = Interval::closed(gap.0, gap.1)?;
        ScaleFunction::closed(interval, ClosedForm::Linear { slope: self.slope(gap) }, None)
    }

    /// The ac scale density carried by all gaps together.
    pub fn gap_density(&self) -> crate::measures::GapDensity {
        crate::measures::GapDensity {
            set: self.set.clone(),
            coef: self.coef,
            exponent: self.exponent,
        }
    }

    pub fn describe(&self) -> String {
        format!("gaps of {} with ds = {}*|g|^{} dx", self.set.describe(), self.coef, self.exponent)
    }
}

/// Where an effective interval came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Origin {
    Explicit(usize),
    Gap { family: usize, generation: u32 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct EffectiveInterval {
    pub interval: Interval,
    pub scale: ScaleFunction,
    pub origin: Origin,
}

impl EffectiveInterval {
    pub fn base(&self) -> f64 {
        self.scale.base()
    }
}

/// State interval, speed measure, effective intervals with their scales and
/// an optional killing measure.
#[derive(Debug, Clone)]
pub struct DiffusionSpec {
    state: Interval,
    speed: MeasureSpec,
    explicit: Vec<ScaleFunction>,
    families: Vec<GapFamily>,
    truncation_depth: u32,
    killing: Option<MeasureSpec>,
    expanded: OnceLock<Vec<EffectiveInterval>>,
}

impl PartialEq for DiffusionSpec {
    fn eq(&self, other: &Self) -> bool {
        self.state == other.state
            && self.speed == other.speed
            && self.explicit == other.explicit
            && self.families == other.families
            && self.truncation_depth == other.truncation_depth
            && self.killing == other.killing
    }
}

impl DiffusionSpec {
    /// A spec with no effective intervals (every point is a trap).
    pub fn new(state: Interval, speed: MeasureSpec) -> Self {
        DiffusionSpec {
            state,
            speed: MeasureSpec {
                carrier: state,
                ..speed
            },
            explicit: Vec::new(),
            families: Vec::new(),
            truncation_depth: DEFAULT_TRUNCATION_DEPTH,
            killing: None,
            expanded: OnceLock::new(),
        }
    }

    /// Lebesgue speed measure on `state`.
    pub fn with_lebesgue_speed(state: Interval) -> Self {
        Self::new(state, MeasureSpec::lebesgue(state))
    }

    /// Adds the effective interval `scale.domain()` carrying `scale`.
    pub fn with_interval(mut self, scale: ScaleFunction) -> Self {
        self.explicit.push(scale);
        self.expanded = OnceLock::new();
        self
    }

    pub fn with_family(mut self, family: GapFamily) -> Self {
        self.families.push(family);
        self.expanded = OnceLock::new();
        self
    }

    /// Replaces the speed measure (its carrier becomes the state space).
    pub fn with_speed(mut self, speed: MeasureSpec) -> Self {
        self.speed = MeasureSpec {
            carrier: self.state,
            ..speed
        };
        self
    }

    pub fn with_killing(mut self, k: MeasureSpec) -> Self {
        self.killing = Some(MeasureSpec {
            carrier: self.state,
            ..k
        });
        self
    }

    pub fn with_truncation_depth(mut self, depth: u32) -> Self {
        self.truncation_depth = depth;
        self.expanded = OnceLock::new();
        self
    }

    pub fn state(&self) -> &Interval {
        &self.state
    }

    pub fn speed(&self) -> &MeasureSpec {
        &self.speed
    }

    pub fn explicit_scales(&self) -> &[ScaleFunction] {
        &self.explicit
    }

    pub fn families(&self) -> &[GapFamily] {
        &self.families
    }

    pub fn truncation_depth(&self) -> u32 {
        self.truncation_depth
    }

    pub fn killing(&self) -> Option<&MeasureSpec> {
        self.killing.as_ref()
    }

    /// All effective intervals (family gaps up to the truncation depth), sorted
    /// by left endpoint.
    pub fn intervals(&self) -> &[EffectiveInterval] {
        self.expanded.get_or_init(|| {
            let mut out: Vec<EffectiveInterval> = self
                .explicit
                .iter()
                .enumerate()
                .map(|(i, s)| EffectiveInterval {
                    interval: *s.domain(),
                    scale: s.clone(),
                    origin: Origin::Explicit(i),
                })
                .collect();
            for (f, fam) in self.families.iter().enumerate() {
                for gap in fam.set.gaps(self.truncation_depth) {
                    if let Ok(scale) = fam.scale_on(gap) {
                        out.push(EffectiveInterval {
                            interval: *scale.domain(),
                            scale,
                            origin: Origin::Gap {
                                family: f,
                                generation: fam.set.gap_generation(gap).unwrap_or(0),
                            },
                        });
                    }
                }
            }
            out.sort_by(|x, y| {
                x.interval
                    .a()
                    .partial_cmp(&y.interval.a())
                    .unwrap()
                    .then(x.interval.b().partial_cmp(&y.interval.b()).unwrap())
            });
            out
        })
    }

    pub fn interval(&self, n: usize) -> Result<&EffectiveInterval> {
        let all = self.intervals();
        all.get(n).ok_or(Error::IndexOutOfRange {
            index: n,
            len: all.len(),
        })
    }

    /// The effective interval containing `x`, materializing family gaps below
    /// the truncation depth when needed.
    pub fn interval_at(&self, x: f64) -> Option<EffectiveInterval> {
        if let Some(e) = self.intervals().iter().find(|e| e.interval.contains(x)) {
            return Some(e.clone());
        }
        for (f, fam) in self.families.iter().enumerate() {
            if let Some(gap) = fam.set.gap_containing(x, 1000) {
                let scale = fam.scale_on(gap).ok()?;
                return Some(EffectiveInterval {
                    interval: *scale.domain(),
                    scale,
                    origin: Origin::Gap {
                        family: f,
                        generation: fam.set.gap_generation(gap).unwrap_or(0),
                    },
                });
            }
        }
        None
    }

    /// Index in [`intervals`](Self::intervals) of the interval containing `x`.
    pub fn index_of(&self, x: f64) -> Option<usize> {
        self.intervals().iter().position(|e| e.interval.contains(x))
    }

    /// Points of the state space outside every effective interval never move.
    pub fn is_trap(&self, x: f64) -> bool {
        self.state.contains(x) && self.interval_at(x).is_none()
    }

    /// Same data with the explicit intervals replaced.
    pub fn with_explicit_intervals(&self, scales: Vec<ScaleFunction>) -> DiffusionSpec {
        DiffusionSpec {
            explicit: scales,
            expanded: OnceLock::new(),
            ..self.clone()
        }
    }

    pub fn with_families(&self, families: Vec<GapFamily>) -> DiffusionSpec {
        DiffusionSpec {
            families,
            expanded: OnceLock::new(),
            ..self.clone()
        }
    }

    /// Replaces state and speed, keeping the intervals.
    pub(crate) fn with_state_and_speed(&self, state: Interval, speed: MeasureSpec) -> DiffusionSpec {
        DiffusionSpec {
            state,
            speed,
            killing: self.killing.as_ref().map(|k| MeasureSpec { carrier: state, ..k.clone() }),
            expanded: OnceLock::new(),
            ..self.clone()
        }
    }

    /// Finite points where the data change form: interval endpoints, density
    /// breakpoints of scales and speed, Cantor hulls.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = vec![self.state.a(), self.state.b()];
        for s in &self.explicit {
            pts.push(s.domain().a());
            pts.push(s.domain().b());
            pts.extend(s.ds().breakpoints());
        }
        for f in &self.families {
            pts.push(f.set.lo());
            pts.push(f.set.hi());
        }
        pts.extend(self.speed.breakpoints());
        pts.retain(|p| p.is_finite());
        pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
        pts.dedup();
        pts
    }

    /// A finite window containing every finite breakpoint of the data, with a
    /// unit margin.
    pub fn default_window(&self) -> Interval {
        let pts = self.breakpoints();
        match (pts.first(), pts.last()) {
            (Some(&lo), Some(&hi)) => Interval::closed(lo - 1.0, hi + 1.0).expect("ordered window"),
            _ => Interval::closed(-1.0, 1.0).expect("unit window"),
        }
    }
}
