//! TOML configuration documents.
//!
//! Numbers may be written as TOML integers or floats, or as strings holding a
//! decimal, a rational `"p/q"`, `"inf"` or `"-inf"`. Unknown keys are errors.

use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::dirichlet::{DiffusionSpec, GapFamily};
use crate::error::{Error, Result};
use crate::measures::{
    CantorCascade, CantorComponent, CantorKind, CantorSet, DensitySegment, Interval, MeasureSpec, Primitive,
};
use crate::scale::{ClosedForm, ScaleFunction};

/// A real number, possibly infinite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Num(pub f64);

impl Num {
    pub fn parse(s: &str) -> std::result::Result<f64, String> {
        let t = s.trim();
        match t {
            "inf" | "+inf" => return Ok(f64::INFINITY),
            "-inf" => return Ok(f64::NEG_INFINITY),
            _ => {}
        }
        let dec = |u: &str| -> std::result::Result<f64, String> {
            let u = u.trim();
            let v: f64 = u.parse().map_err(|_| format!("`{s}` is not a number"))?;
            if v.is_finite() && !u.to_ascii_lowercase().contains("inf") && !u.to_ascii_lowercase().contains("nan") {
                Ok(v)
            } else {
                Err(format!("`{s}` is not a finite decimal"))
            }
        };
        match t.split_once('/') {
            Some((p, q)) => {
                let (p, q) = (dec(p)?, dec(q)?);
                if q == 0.0 {
                    return Err(format!("`{s}` divides by zero"));
                }
                Ok(p / q)
            }
            None => dec(t),
        }
    }
}

impl Serialize for Num {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&crate::measures::interval::fmt_point(self.0))
    }
}

impl<'de> Deserialize<'de> for Num {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = Num;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a number, a rational \"p/q\", \"inf\" or \"-inf\"")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> std::result::Result<Num, E> {
                Ok(Num(v as f64))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> std::result::Result<Num, E> {
                Ok(Num(v as f64))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> std::result::Result<Num, E> {
                if v.is_nan() {
                    return Err(E::custom("NaN is not allowed"));
                }
                Ok(Num(v))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Num, E> {
                Num::parse(v).map(Num).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntervalCfg {
    pub a: Num,
    pub b: Num,
    #[serde(default)]
    pub left_closed: bool,
    #[serde(default)]
    pub right_closed: bool,
}

impl IntervalCfg {
    pub fn build(&self) -> Result<Interval> {
        Interval::new(self.a.0, self.b.0, self.left_closed, self.right_closed)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CantorCfg {
    pub lo: Num,
    pub hi: Num,
    /// Standard construction: relative length of each kept end piece.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub keep_ratio: Option<Num>,
    /// Positive-length construction: removed middle fractions per level...
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub removed: Option<Vec<Num>>,
    /// ...then shrinking geometrically by this factor.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_ratio: Option<Num>,
}

impl CantorCfg {
    pub fn build(&self) -> Result<CantorSet> {
        let kind = match (&self.keep_ratio, &self.removed, &self.tail_ratio) {
            (Some(k), None, None) => CantorKind::Standard { keep_ratio: k.0 },
            (None, Some(r), Some(t)) => CantorKind::Fat { removed: r.iter().map(|n| n.0).collect(), tail_ratio: t.0 },
            (None, None, None) => CantorKind::Standard { keep_ratio: 1.0 / 3.0 },
            _ => {
                return Err(Error::InvalidMeasure(
                    "a Cantor set takes either keep_ratio or removed + tail_ratio".into(),
                ))
            }
        };
        CantorSet::new(self.lo.0, self.hi.0, kind)
    }
}

/// One component of a measure.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ComponentCfg {
    /// Density 1 on `support` (default: the carrier).
    Lebesgue {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        support: Option<IntervalCfg>,
    },
    Constant {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        support: Option<IntervalCfg>,
        value: Num,
    },
    /// `coef * |x - center|^exponent`.
    Power {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        support: Option<IntervalCfg>,
        #[serde(default = "one")]
        coef: Num,
        #[serde(default = "zero")]
        center: Num,
        exponent: Num,
    },
    /// Derivative of `-coef * exp(rate / (x - center))` (sign-adjusted).
    ExpRecip {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        support: Option<IntervalCfg>,
        #[serde(default = "one")]
        coef: Num,
        #[serde(default = "zero")]
        center: Num,
        #[serde(default = "one")]
        rate: Num,
    },
    Atom {
        point: Num,
        mass: Num,
    },
    /// Uniform measure on a Cantor set.
    Cantor {
        set: CantorCfg,
        #[serde(default = "one")]
        mass: Num,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        eval_depth: Option<u32>,
    },
    /// Copies of a Cantor measure shrinking toward `center`.
    Cascade {
        set: CantorCfg,
        #[serde(default = "one")]
        mass: Num,
        center: Num,
        ratio: Num,
        #[serde(default = "one")]
        mass_ratio: Num,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        count: Option<usize>,
    },
    /// `coef * |g|^exponent` on each removed gap `g` of a Cantor set.
    GapDensity {
        set: CantorCfg,
        #[serde(default = "one")]
        coef: Num,
        #[serde(default = "zero")]
        exponent: Num,
    },
}

fn one() -> Num {
    Num(1.0)
}

fn zero() -> Num {
    Num(0.0)
}

pub fn build_measure(carrier: Interval, parts: &[ComponentCfg]) -> Result<MeasureSpec> {
    let mut m = MeasureSpec::zero(carrier);
    let support = |s: &Option<IntervalCfg>| s.as_ref().map(|i| i.build()).unwrap_or(Ok(carrier));
    for c in parts {
        m = match c {
            ComponentCfg::Lebesgue { support: s } => {
                m.with_segment(DensitySegment::new(support(s)?, Primitive::Constant(1.0))?)
            }
            ComponentCfg::Constant { support: s, value } => {
                m.with_segment(DensitySegment::new(support(s)?, Primitive::Constant(value.0))?)
            }
            ComponentCfg::Power { support: s, coef, center, exponent } => m.with_segment(DensitySegment::new(
                support(s)?,
                Primitive::Power { coef: coef.0, center: center.0, exponent: exponent.0 },
            )?),
            ComponentCfg::ExpRecip { support: s, coef, center, rate } => m.with_segment(DensitySegment::new(
                support(s)?,
                Primitive::ExpRecip { coef: coef.0, center: center.0, rate: rate.0 },
            )?),
            ComponentCfg::Atom { point, mass } => {
                if !(mass.0 > 0.0 && mass.0.is_finite()) {
                    return Err(Error::InvalidMeasure(format!("atom mass {} must be positive", mass.0)));
                }
                m.with_atom(point.0, mass.0)
            }
            ComponentCfg::Cantor { set, mass, eval_depth } => {
                let mut c = CantorComponent::new(set.build()?, mass.0)?;
                if let Some(d) = eval_depth {
                    c = c.with_depth(*d);
                }
                m.with_cantor(c)
            }
            ComponentCfg::Cascade { set, mass, center, ratio, mass_ratio, count } => {
                let first = CantorComponent::new(set.build()?, mass.0)?;
                m.with_cascade(CantorCascade::new(first, center.0, ratio.0, mass_ratio.0, *count)?)
            }
            ComponentCfg::GapDensity { set, coef, exponent } => {
                m.with_gap_density(crate::measures::GapDensity::new(set.build()?, coef.0, exponent.0)?)
            }
        };
    }
    m.validate()?;
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ScaleCfg {
    /// `s(x) = x`.
    Natural {},
    Linear { slope: Num },
    /// `s(x) = log x`.
    Log {},
    /// `ds = x^(alpha - 1) dx`.
    Power { alpha: Num },
    /// `s(x) = -exp(1/x)`.
    NegExpRecip {},
    /// `s` is the distribution function of a measure.
    Measure { ds: Vec<ComponentCfg> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EffectiveIntervalCfg {
    pub interval: IntervalCfg,
    pub scale: ScaleCfg,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_point: Option<Num>,
}

impl EffectiveIntervalCfg {
    pub fn build(&self) -> Result<ScaleFunction> {
        let j = self.interval.build()?;
        let base = self.base_point.map(|n| n.0);
        let closed = |form| ScaleFunction::closed(j, form, base);
        match &self.scale {
            ScaleCfg::Natural {} => closed(ClosedForm::Linear { slope: 1.0 }),
            ScaleCfg::Linear { slope } => closed(ClosedForm::Linear { slope: slope.0 }),
            ScaleCfg::Log {} => closed(ClosedForm::Log),
            ScaleCfg::Power { alpha } => closed(ClosedForm::Power { alpha: alpha.0 }),
            ScaleCfg::NegExpRecip {} => closed(ClosedForm::NegExpRecip),
            ScaleCfg::Measure { ds } => ScaleFunction::from_measure(j, base, build_measure(j, ds)?),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GapFamilyCfg {
    pub set: CantorCfg,
    #[serde(default = "one")]
    pub coef: Num,
    #[serde(default = "zero")]
    pub exponent: Num,
}

/// Defaults for `hitprob`, `simulate` and `energy`; command-line flags win.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentCfg {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub left: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_s: Option<Num>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub paths: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Total jumps for an occupation run.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub steps: Option<u64>,
    /// `(x, u)` knots of a test function, piecewise linear in scale.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub knots: Option<Vec<(Num, Num)>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigDocument {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    /// Default: the real line.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state_space: Option<IntervalCfg>,
    /// Default: Lebesgue measure on the state space.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub speed_measure: Option<Vec<ComponentCfg>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub effective_intervals: Vec<EffectiveIntervalCfg>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub gap_families: Vec<GapFamilyCfg>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub killing: Option<Vec<ComponentCfg>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub truncation_depth: Option<u32>,
    /// Reference measure for the closability question (on the real line).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub density: Option<Vec<ComponentCfg>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<ExperimentCfg>,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map(|l| l.chars().count()).unwrap_or(0) + 1;
    (line, col)
}

impl ConfigDocument {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map(|s| line_col(text, s.start)).unwrap_or((1, 1));
            Error::Config { line, column, message: e.message().to_string() }
        })
    }

    /// Canonical serialization: parsed values re-emitted in a fixed order.
    pub fn canonical(&self) -> String {
        toml::to_string(self).expect("config documents always serialize")
    }

    /// SHA-256 of the canonical form, in hex.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        hex::encode(Sha256::digest(self.canonical().as_bytes()))
    }

    pub fn state(&self) -> Result<Interval> {
        self.state_space.as_ref().map(|s| s.build()).unwrap_or(Ok(Interval::real_line()))
    }

    pub fn build_spec(&self) -> Result<DiffusionSpec> {
        let state = self.state()?;
        let speed = match &self.speed_measure {
            Some(parts) => build_measure(state, parts)?,
            None => MeasureSpec::lebesgue(state),
        };
        let mut spec = DiffusionSpec::new(state, speed);
        for e in &self.effective_intervals {
            spec = spec.with_interval(e.build()?);
        }
        for f in &self.gap_families {
            spec = spec.with_family(GapFamily::new(f.set.build()?, f.coef.0, f.exponent.0)?);
        }
        if let Some(k) = &self.killing {
            spec = spec.with_killing(build_measure(state, k)?);
        }
        if let Some(d) = self.truncation_depth {
            spec = spec.with_truncation_depth(d);
        }
        Ok(spec)
    }

    pub fn build_density(&self) -> Result<crate::smoothcore::HamzaDensity> {
        let parts = self
            .density
            .as_ref()
            .ok_or_else(|| Error::Precondition("the config has no `density` section".into()))?;
        Ok(crate::smoothcore::HamzaDensity::new(build_measure(Interval::real_line(), parts)?))
    }

    pub fn experiment(&self) -> ExperimentCfg {
        self.experiment.clone().unwrap_or_default()
    }
}
