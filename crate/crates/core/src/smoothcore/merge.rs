//! Closure of smooth functions in a form: fusing each scale-connection class
//! of ac scale parts into one effective interval.

use crate::error::{Error, Result};
use crate::measures::{Interval, MeasureSpec};
use crate::scale::ScaleFunction;

use super::connection::{connection_graph, family_of, ConnectionGraph};
use super::containment::contains_smooth;
use crate::dirichlet::{DiffusionSpec, GapFamily, Origin};

#[derive(Debug, Clone, PartialEq)]
pub struct MergedInterval {
    /// Node indices (into the original [`DiffusionSpec::intervals`]).
    pub class: Vec<usize>,
    /// Gap families absorbed whole into this interval.
    pub families: Vec<usize>,
    pub scale: ScaleFunction,
}

impl MergedInterval {
    pub fn interval(&self) -> &Interval {
        self.scale.domain()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MergeResult {
    pub graph: ConnectionGraph,
    pub merged: Vec<MergedInterval>,
    /// Families whose gaps are all scale-isolated; they pass through unchanged.
    pub kept_families: Vec<usize>,
    pub spec: DiffusionSpec,
}

impl MergeResult {
    pub fn class_count(&self) -> usize {
        self.merged.len() + self.kept_families.len()
    }

    /// One line per merged interval: endpoints with membership, scale limits
    /// and the scale description.
    pub fn to_text(&self) -> String {
        let mut out = format!("classes {}\n", self.class_count());
        for (k, m) in self.merged.iter().enumerate() {
            let s = &m.scale;
            out.push_str(&format!(
                "merged.{k} {} scale={} s(a)={} s(b)={} members={}\n",
                s.domain(),
                s.describe(),
                s.left_limit(),
                s.right_limit(),
                m.class.len()
            ));
        }
        for f in &self.kept_families {
            out.push_str(&format!("family.{f} kept {}\n", self.spec.families()[*f].describe()));
        }
        if self.graph.truncated {
            out.push_str(&format!("note gap families materialized to depth {}\n", self.graph.truncation_depth));
        }
        out
    }
}

/// Merges every class of the ac scale parts. Requires smooth functions to lie
/// in the domain. Hull endpoints are included when finite, at finite scale
/// distance and inside the state space.
pub fn cinf_merge(spec: &DiffusionSpec) -> Result<MergeResult> {
    let smooth = contains_smooth(spec, &spec.default_window())?;
    if !smooth.contained {
        return Err(Error::Precondition(format!(
            "smooth functions are not in the domain: {}",
            smooth.reasons().join("; ")
        )));
    }
    let graph = connection_graph(spec, true);
    let nodes = spec.intervals();

    // A family is either absorbed whole into one class or all its gaps are
    // isolated.
    let mut kept_families = Vec::new();
    let mut absorbed: Vec<Option<usize>> = vec![None; spec.families().len()];
    for f in 0..spec.families().len() {
        let classes: Vec<usize> = (0..nodes.len())
            .filter(|&n| family_of(spec, n) == Some(f))
            .map(|n| graph.class_of(n).expect("every node has a class"))
            .collect();
        let fam = &spec.families()[f];
        let internally_connected =
            !fam.set.is_fat() && fam.set.gap_sum(fam.set.lo(), fam.set.hi(), fam.coef, fam.exponent).is_finite();
        let mut distinct = classes.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if internally_connected && distinct.len() <= 1 {
            absorbed[f] = distinct.first().copied();
            if distinct.is_empty() {
                return Err(Error::Undecidable(format!("gap family {f} has no materialized gaps")));
            }
        } else if !internally_connected && classes.iter().all(|&c| graph.classes[c].len() == 1) {
            kept_families.push(f);
        } else {
            return Err(Error::Undecidable(format!(
                "gap family {f} is split across several classes at the truncation depth"
            )));
        }
    }

    let state = spec.state();
    let mut merged = Vec::new();
    for (c, class) in graph.classes.iter().enumerate() {
        if class.len() == 1 {
            if let Some(f) = family_of(spec, class[0]) {
                if kept_families.contains(&f) {
                    continue;
                }
            }
        }
        let families: Vec<usize> = (0..absorbed.len()).filter(|&f| absorbed[f] == Some(c)).collect();
        let explicit: Vec<&ScaleFunction> = class
            .iter()
            .filter_map(|&n| match nodes[n].origin {
                Origin::Explicit(i) => Some(&spec.explicit_scales()[i]),
                Origin::Gap { .. } => None,
            })
            .collect();

        if class.len() == 1 && explicit.len() == 1 && families.is_empty() {
            let s = explicit[0];
            merged.push(MergedInterval {
                class: class.clone(),
                families,
                scale: single(s, state)?,
            });
            continue;
        }

        let mut a = f64::INFINITY;
        let mut b = f64::NEG_INFINITY;
        for &n in class {
            a = a.min(nodes[n].interval.a());
            b = b.max(nodes[n].interval.b());
        }
        for &f in &families {
            a = a.min(spec.families()[f].set.lo());
            b = b.max(spec.families()[f].set.hi());
        }
        let hull = Interval::open(a, b)?;
        let mut ds = MeasureSpec::zero(hull);
        for s in &explicit {
            ds = ds.add(&s.ds().lebesgue_decompose().0);
        }
        for &f in &families {
            ds.gap_densities.push(spec.families()[f].gap_density());
        }
        let ds = MeasureSpec { carrier: hull, ..ds.simplify() };
        let scale = with_membership(hull, None, ds, state)?;
        merged.push(MergedInterval {
            class: class.clone(),
            families,
            scale,
        });
    }
    merged.sort_by(|x, y| x.interval().a().partial_cmp(&y.interval().a()).unwrap());
    let out = spec
        .with_explicit_intervals(merged.iter().map(|m| m.scale.clone()).collect())
        .with_families(kept_families.iter().map(|&f| spec.families()[f].clone()).collect::<Vec<GapFamily>>());
    Ok(MergeResult {
        graph,
        merged,
        kept_families,
        spec: out,
    })
}

/// A singleton class: the ac part on the interval with recomputed membership.
/// An unchanged absolutely continuous scale is returned as it is.
fn single(s: &ScaleFunction, state: &Interval) -> Result<ScaleFunction> {
    let ac = s.ac_part();
    let j = s.domain();
    let open = Interval::open(j.a(), j.b())?;
    let rebuilt = with_membership(open, Some(s.base()), ac.ds().clone(), state)?;
    if rebuilt.domain() == j && ac.ds() == s.ds() {
        return Ok(s.clone());
    }
    Ok(rebuilt)
}

fn with_membership(hull: Interval, base: Option<f64>, ds: MeasureSpec, state: &Interval) -> Result<ScaleFunction> {
    let probe = ScaleFunction::candidate(hull, base, ds.clone())?;
    let (a, b) = (hull.a(), hull.b());
    let left = a.is_finite() && probe.left_limit().is_finite() && state.contains(a);
    let right = b.is_finite() && probe.right_limit().is_finite() && state.contains(b);
    let j = Interval::new(a, b, left, right)?;
    Ok(ScaleFunction::from_measure(j, Some(probe.base()), ds)?.recognize())
}
