use crate::dirichlet::{BoundaryKind, DiffusionSpec};
use crate::error::{Error, Result};
use crate::measures::Interval;

use super::SimConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryRow {
    /// The walk stops here (window edge, absorbing or trap-adjacent end).
    Absorbing,
    /// The walk steps back inside with probability 1.
    Reflecting,
}

/// Nearest-neighbour walk on a grid that is uniform in the scale coordinate of
/// one effective interval. Exit locations of the walk are exactly those of the
/// diffusion; only the clock is approximate.
#[derive(Debug, Clone, PartialEq)]
pub struct EmbeddedChain {
    pub interval: usize,
    pub points: Vec<f64>,
    /// `s(x_i)` at the grid points.
    pub scales: Vec<f64>,
    pub delta_s: f64,
    pub left_row: BoundaryRow,
    pub right_row: BoundaryRow,
    /// Speed mass of the cell around each point.
    pub cell_mass: Vec<f64>,
    /// Expected holding time per visit (approximate clock).
    pub holding: Vec<f64>,
    /// Per-visit killing probability from the killing measure (zero without
    /// killing).
    pub kill_prob: Vec<f64>,
}

impl EmbeddedChain {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Probability of stepping left from point `i`.
    pub fn p_left(&self, i: usize) -> f64 {
        let last = self.len() - 1;
        if i == 0 {
            return 0.0;
        }
        if i == last {
            return 1.0;
        }
        let y = &self.scales;
        (y[i + 1] - y[i]) / (y[i + 1] - y[i - 1])
    }

    pub fn is_absorbing(&self, i: usize) -> bool {
        (i == 0 && self.left_row == BoundaryRow::Absorbing)
            || (i == self.len() - 1 && self.right_row == BoundaryRow::Absorbing)
    }

    /// Index of the grid point equal to `x` (to a relative `1e-9`).
    pub fn index_of(&self, x: f64) -> Result<usize> {
        let tol = 1e-9 * x.abs().max(1.0);
        let (k, d) = self
            .points
            .iter()
            .enumerate()
            .map(|(k, p)| (k, (p - x).abs()))
            .fold((0, f64::INFINITY), |acc, v| if v.1 < acc.1 { v } else { acc });
        if d <= tol {
            Ok(k)
        } else {
            Err(Error::Simulation(format!(
                "{x} is not a grid point; nearest is {} (delta_s = {})",
                self.points[k], self.delta_s
            )))
        }
    }

    /// All steps are fair coin flips.
    pub fn is_symmetric(&self) -> bool {
        (1..self.len().saturating_sub(1)).all(|i| self.p_left(i) == 0.5)
    }
}

/// Builds the chain on `window`, a sub-interval of the closure of effective
/// interval `n` with finite scale at both ends. The grid has
/// `M = round(gap / delta_s)` steps, after which `delta_s` is reset to
/// `gap / M` so both window ends are grid points.
pub fn build_chain(spec: &DiffusionSpec, n: usize, window: &Interval, cfg: &SimConfig) -> Result<EmbeddedChain> {
    let e = spec.interval(n)?.clone();
    let j = e.interval;
    let (a, b) = (window.a(), window.b());
    if a < j.a() || b > j.b() {
        return Err(Error::Precondition(format!("window {window} is not inside the effective interval {j}")));
    }
    let s = &e.scale;
    let (ya, yb) = (s.eval(a)?, s.eval(b)?);
    if !ya.is_finite() || !yb.is_finite() {
        return Err(Error::Precondition(format!(
            "window {window} reaches an endpoint at infinite scale distance; shrink it to a finite scale range"
        )));
    }
    if !s.is_absolutely_continuous() {
        return Err(Error::Precondition(
            "paths are only simulated for absolutely continuous scales".into(),
        ));
    }
    let (ya, yb) = (ya.to_f64(), yb.to_f64());
    let gap = yb - ya;
    let requested = cfg.delta_s.unwrap_or(1e-3 * gap);
    if !(requested > 0.0) {
        return Err(Error::Precondition(format!("delta_s must be positive, got {requested}")));
    }
    let m = ((gap / requested).round() as usize).max(1);
    let delta_s = gap / m as f64;
    let mut points = Vec::with_capacity(m + 1);
    let mut scales = Vec::with_capacity(m + 1);
    for i in 0..=m {
        let x = if i == 0 {
            a
        } else if i == m {
            b
        } else {
            s.inverse_eval(ya + i as f64 * delta_s)?
        };
        points.push(x);
        scales.push(if i == 0 {
            ya
        } else if i == m {
            yb
        } else {
            s.eval(x)?.to_f64()
        });
    }
    let (lv, rv) = crate::dirichlet::boundary_classification(spec, n)?;
    let row = |at_end: bool, kind: BoundaryKind| {
        if at_end && kind == BoundaryKind::Reflecting {
            BoundaryRow::Reflecting
        } else {
            BoundaryRow::Absorbing
        }
    };
    let left_row = row(a == j.a(), lv.kind);
    let right_row = row(b == j.b(), rv.kind);

    let mid = |i: usize, k: usize| 0.5 * (points[i] + points[k]);
    let cell = |i: usize| -> Result<Interval> {
        let lo = if i == 0 { points[0] } else { mid(i - 1, i) };
        let hi = if i == m { points[m] } else { mid(i, i + 1) };
        Interval::new(lo, hi, i == 0, true)
    };
    let mut cell_mass = Vec::with_capacity(m + 1);
    let mut holding = Vec::with_capacity(m + 1);
    let mut kill_prob = Vec::with_capacity(m + 1);
    for i in 0..=m {
        let c = cell(i)?;
        let mass = spec.speed().mass(&c).to_f64();
        let absorbing = (i == 0 && left_row == BoundaryRow::Absorbing) || (i == m && right_row == BoundaryRow::Absorbing);
        let degree = if i == 0 || i == m { 1.0 } else { 2.0 };
        let h = if absorbing { 0.0 } else { mass * delta_s / degree };
        let k = match spec.killing() {
            Some(k) if !absorbing => 1.0 - (-k.mass(&c).to_f64() * delta_s / degree).exp(),
            _ => 0.0,
        };
        cell_mass.push(mass);
        holding.push(h);
        kill_prob.push(k);
    }
    Ok(EmbeddedChain {
        interval: n,
        points,
        scales,
        delta_s,
        left_row,
        right_row,
        cell_mass,
        holding,
        kill_prob,
    })
}
