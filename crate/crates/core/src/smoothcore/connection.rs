//! Scale connection between effective intervals.

use rayon::prelude::*;

use crate::error::Result;
use crate::extended::ExtReal;
use crate::measures::{ranges, Interval};

use crate::dirichlet::{DiffusionSpec, Origin};

/// `lambda_s([p, q])`: total scale mass of all effective intervals inside
/// `[p, q]`, gap families summed over every generation. With `use_ac` only the
/// absolutely continuous parts count.
pub fn lambda_s(spec: &DiffusionSpec, p: f64, q: f64, use_ac: bool) -> ExtReal {
    if !(p < q) {
        return ExtReal::ZERO;
    }
    let window = Interval::closed(p, q).expect("finite ordered window");
    let mut total = ExtReal::ZERO;
    for s in spec.explicit_scales() {
        if let Some(x) = s.domain().intersect(&window) {
            let mass = if use_ac {
                s.ds().lebesgue_decompose().0.mass(&x)
            } else {
                s.ds().mass(&x)
            };
            total = total + mass;
        }
    }
    for f in spec.families() {
        total = total + f.set.gap_sum(p, q, f.coef, f.exponent);
    }
    total
}

/// `lambda_l([p, q])`: Lebesgue measure of the part of `[p, q]` outside every
/// effective interval.
pub fn lambda_l(spec: &DiffusionSpec, p: f64, q: f64) -> f64 {
    if !(p < q) {
        return 0.0;
    }
    let mut covers: Vec<(f64, f64)> = spec
        .explicit_scales()
        .iter()
        .map(|s| (s.domain().a(), s.domain().b()))
        .collect();
    covers.extend(spec.families().iter().map(|f| (f.set.lo(), f.set.hi())));
    let rest = ranges::subtract(&[(p, q)], &covers);
    let mut out = ranges::total_length(&rest);
    for f in spec.families() {
        let (u, v) = (p.max(f.set.lo()), q.min(f.set.hi()));
        if u < v {
            out += f.set.lebesgue_in(u, v);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConnectionWitness {
    pub i: usize,
    pub j: usize,
    pub lambda_s: ExtReal,
    pub lambda_l: f64,
    pub connected: bool,
}

fn witness(spec: &DiffusionSpec, i: usize, j: usize, use_ac: bool) -> ConnectionWitness {
    let all = spec.intervals();
    let (ei, ej) = (all[i].base(), all[j].base());
    let (p, q) = (ei.min(ej), ei.max(ej));
    let ls = lambda_s(spec, p, q, use_ac);
    let ll = lambda_l(spec, p, q);
    ConnectionWitness {
        i,
        j,
        lambda_s: ls,
        lambda_l: ll,
        connected: ls.is_finite() && ll == 0.0,
    }
}

/// Whether intervals `i` and `j` (indices into [`DiffusionSpec::intervals`])
/// are scale-connected, with the two masses on `[e_i, e_j]` as witnesses.
pub fn scale_connected(spec: &DiffusionSpec, i: usize, j: usize, use_ac: bool) -> Result<ConnectionWitness> {
    spec.interval(i)?;
    spec.interval(j)?;
    Ok(witness(spec, i, j, use_ac))
}

/// Equivalence classes of the materialized effective intervals. Both masses
/// are additive over adjacent windows, so a class is a maximal run of
/// neighbours that are pairwise connected.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionGraph {
    pub use_ac: bool,
    pub truncation_depth: u32,
    /// Gap families were cut at `truncation_depth` generations; deeper gaps
    /// enter the witnesses through closed-form sums only.
    pub truncated: bool,
    pub node_count: usize,
    pub classes: Vec<Vec<usize>>,
    /// Witness for each pair of neighbours `(n, n + 1)`.
    pub links: Vec<ConnectionWitness>,
}

impl ConnectionGraph {
    pub fn class_of(&self, n: usize) -> Option<usize> {
        self.classes.iter().position(|c| c.contains(&n))
    }

    pub fn all_singletons(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }
}

pub fn connection_graph(spec: &DiffusionSpec, use_ac: bool) -> ConnectionGraph {
    let n = spec.intervals().len();
    let links: Vec<ConnectionWitness> = (1..n)
        .into_par_iter()
        .map(|k| witness(spec, k - 1, k, use_ac))
        .collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for k in 0..n {
        if k > 0 && links[k - 1].connected {
            classes.last_mut().expect("open class").push(k);
        } else {
            classes.push(vec![k]);
        }
    }
    ConnectionGraph {
        use_ac,
        truncation_depth: spec.truncation_depth(),
        truncated: !spec.families().is_empty(),
        node_count: n,
        classes,
        links,
    }
}

/// Family index of a node, if it is a family gap.
pub(crate) fn family_of(spec: &DiffusionSpec, node: usize) -> Option<usize> {
    match spec.intervals()[node].origin {
        Origin::Gap { family, .. } => Some(family),
        Origin::Explicit(_) => None,
    }
}
