//! Energy and domain membership for functions that are piecewise linear in
//! the scale coordinate of each effective interval.

use crate::error::{Error, Result};
use crate::extended::ExtReal;
use crate::measures::{Interval, MeasureSpec};
use crate::quad;

use super::validate::dirichlet_flags;
use super::DiffusionSpec;

/// Knots `(x_i, u_i)` inside effective interval `interval` (an index into
/// [`DiffusionSpec::intervals`]). The function is linear in `y = s(x)`
/// between knots and constant beyond the outer knots. Knots may sit at the
/// interval's endpoints, including excluded ones.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalePiece {
    pub interval: usize,
    pub knots: Vec<(f64, f64)>,
}

/// A function on the state space: scale-piecewise-linear on the listed
/// effective intervals, zero on effective intervals without a piece, and
/// piecewise constant (default zero) off the effective intervals.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TestFunction {
    pub pieces: Vec<ScalePiece>,
    pub off: Vec<(Interval, f64)>,
}

impl TestFunction {
    /// Groups knots by the effective interval containing them.
    pub fn from_knots(spec: &DiffusionSpec, knots: &[(f64, f64)]) -> Result<Self> {
        let mut pieces: Vec<ScalePiece> = Vec::new();
        for &(x, u) in knots {
            let n = locate_closure(spec, x).ok_or(Error::OutOfDomain {
                x,
                domain: "the effective intervals".into(),
            })?;
            match pieces.iter_mut().find(|p| p.interval == n) {
                Some(p) => p.knots.push((x, u)),
                None => pieces.push(ScalePiece {
                    interval: n,
                    knots: vec![(x, u)],
                }),
            }
        }
        for p in &mut pieces {
            p.knots.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        }
        Ok(TestFunction { pieces, off: Vec::new() })
    }

    pub fn with_off_value(mut self, j: Interval, value: f64) -> Self {
        self.off.push((j, value));
        self
    }

    /// Multiplies every value by `c`.
    pub fn scaled(&self, c: f64) -> TestFunction {
        TestFunction {
            pieces: self
                .pieces
                .iter()
                .map(|p| ScalePiece {
                    interval: p.interval,
                    knots: p.knots.iter().map(|&(x, u)| (x, c * u)).collect(),
                })
                .collect(),
            off: self.off.iter().map(|&(j, v)| (j, c * v)).collect(),
        }
    }

    /// The pointwise clamp into `[lo, hi]`: knots are added where a segment
    /// crosses a level, then values are clamped.
    pub fn clamped(&self, spec: &DiffusionSpec, lo: f64, hi: f64) -> Result<TestFunction> {
        let mut pieces = Vec::with_capacity(self.pieces.len());
        for p in &self.pieces {
            let s = &spec.interval(p.interval)?.scale;
            let mut knots = Vec::with_capacity(p.knots.len());
            for (k, &(x1, u1)) in p.knots.iter().enumerate() {
                if k > 0 {
                    let (x0, u0) = p.knots[k - 1];
                    let (y0, y1) = (s.eval(x0)?, s.eval(x1)?);
                    if let (Some(y0), Some(y1)) = (y0.finite(), y1.finite()) {
                        let mut cuts: Vec<f64> = [lo, hi]
                            .into_iter()
                            .filter(|&c| (u0 - c) * (u1 - c) < 0.0)
                            .map(|c| (c - u0) / (u1 - u0))
                            .collect();
                        cuts.sort_by(|a, b| a.partial_cmp(b).unwrap());
                        for t in cuts {
                            let x = s.inverse_eval(y0 + t * (y1 - y0))?;
                            if x > x0 && x < x1 {
                                knots.push((x, (u0 + t * (u1 - u0)).clamp(lo, hi)));
                            }
                        }
                    }
                }
                knots.push((x1, u1.clamp(lo, hi)));
            }
            pieces.push(ScalePiece { interval: p.interval, knots });
        }
        Ok(TestFunction {
            pieces,
            off: self.off.iter().map(|&(j, v)| (j, v.clamp(lo, hi))).collect(),
        })
    }

    /// Value at `x` (limits are used at excluded endpoints).
    pub fn value(&self, spec: &DiffusionSpec, x: f64) -> f64 {
        if let Some(n) = spec.index_of(x) {
            return match self.pieces.iter().find(|p| p.interval == n) {
                Some(p) => piece_value(spec, p, x),
                None => 0.0,
            };
        }
        self.off
            .iter()
            .find(|(j, _)| j.contains(x))
            .map(|&(_, v)| v)
            .unwrap_or(0.0)
    }
}

fn locate_closure(spec: &DiffusionSpec, x: f64) -> Option<usize> {
    spec.index_of(x).or_else(|| {
        spec.intervals()
            .iter()
            .position(|e| e.interval.a() == x || e.interval.b() == x)
    })
}

fn piece_value(spec: &DiffusionSpec, p: &ScalePiece, x: f64) -> f64 {
    let k = &p.knots;
    if k.is_empty() {
        return 0.0;
    }
    if x <= k[0].0 {
        return k[0].1;
    }
    if x >= k[k.len() - 1].0 {
        return k[k.len() - 1].1;
    }
    let s = &spec.intervals()[p.interval].scale;
    let i = k.iter().position(|&(kx, _)| kx > x).unwrap() - 1;
    let (x0, u0) = k[i];
    let (x1, u1) = k[i + 1];
    let (y0, y1, y) = (
        s.eval(x0).map(|v| v.to_f64()).unwrap_or(f64::NAN),
        s.eval(x1).map(|v| v.to_f64()).unwrap_or(f64::NAN),
        s.eval(x).map(|v| v.to_f64()).unwrap_or(f64::NAN),
    );
    if y0.is_infinite() {
        return u1;
    }
    if y1.is_infinite() {
        return u0;
    }
    u0 + (u1 - u0) * (y - y0) / (y1 - y0)
}

/// `1/2 * sum (du)^2 / dy` over consecutive knots. A knot pair at infinite
/// (or zero) scale distance with different values has infinite energy.
fn piece_energy(spec: &DiffusionSpec, p: &ScalePiece) -> Result<ExtReal> {
    let e = spec.interval(p.interval)?;
    let mut total = ExtReal::ZERO;
    let mut prev: Option<(ExtReal, f64)> = None;
    for &(x, u) in &p.knots {
        let y = e.scale.eval(x)?;
        if let Some((y0, u0)) = prev {
            let du = u - u0;
            if du != 0.0 {
                let dy = y - y0;
                total = total
                    + match dy {
                        ExtReal::Finite(d) if d > 0.0 => ExtReal::from_f64(0.5 * du * du / d),
                        _ => ExtReal::PosInf,
                    };
            }
        }
        prev = Some((y, u));
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyReport {
    /// `sum_n 1/2 int (du/ds_n)^2 ds_n`.
    pub form: ExtReal,
    /// `int u^2 dk` (zero without killing).
    pub killing: ExtReal,
    /// The killing term was computed from closed forms only.
    pub killing_exact: bool,
}

impl EnergyReport {
    pub fn total(&self) -> ExtReal {
        self.form + self.killing
    }
}

/// Regions of the state space on which `u` is constant or sloped.
enum Region {
    Constant { j: Interval, value: f64 },
    Sloped { n: usize, x0: f64, u0: f64, x1: f64, u1: f64 },
    Knot { x: f64, value: f64 },
}

fn regions(spec: &DiffusionSpec, u: &TestFunction) -> Vec<Region> {
    let mut out = Vec::new();
    for p in &u.pieces {
        let Some(e) = spec.intervals().get(p.interval) else { continue };
        let k = &p.knots;
        if k.is_empty() {
            continue;
        }
        let j = e.interval;
        let first = k[0];
        let last = k[k.len() - 1];
        if first.0 > j.a() {
            if let Ok(r) = Interval::new(j.a(), first.0, j.left_closed(), false) {
                out.push(Region::Constant { j: r, value: first.1 });
            }
        }
        for &(x, value) in k {
            if j.contains(x) {
                out.push(Region::Knot { x, value });
            }
        }
        for w in k.windows(2) {
            if w[0].0 < w[1].0 {
                out.push(Region::Sloped {
                    n: p.interval,
                    x0: w[0].0,
                    u0: w[0].1,
                    x1: w[1].0,
                    u1: w[1].1,
                });
            }
        }
        if last.0 < j.b() {
            if let Ok(r) = Interval::new(last.0, j.b(), !j.contains(last.0), j.right_closed()) {
                out.push(Region::Constant { j: r, value: last.1 });
            }
        }
    }
    for &(j, value) in &u.off {
        if value != 0.0 {
            out.push(Region::Constant { j, value });
        }
    }
    out
}

/// Mass of `j` outside the materialized effective intervals.
fn off_mass(spec: &DiffusionSpec, mu: &MeasureSpec, j: &Interval) -> ExtReal {
    let mut total = mu.mass(j);
    for e in spec.intervals() {
        if let Some(x) = e.interval.intersect(j) {
            let inner = mu.mass(&x);
            if let (ExtReal::Finite(t), ExtReal::Finite(i)) = (total, inner) {
                total = ExtReal::Finite((t - i).max(0.0));
            }
        }
    }
    total
}

/// `int u^2 d mu` over a region; `(value, exact)`.
fn square_integral(spec: &DiffusionSpec, mu: &MeasureSpec, r: &Region, off: bool) -> (ExtReal, bool) {
    match *r {
        Region::Constant { j, value } => {
            let mass = if off { off_mass(spec, mu, &j) } else { mu.mass(&j) };
            (mass * (value * value), true)
        }
        Region::Knot { x, value } => {
            let m: f64 = mu.atoms.iter().filter(|a| a.point == x).map(|a| a.mass).sum();
            (ExtReal::from_f64(m * value * value), true)
        }
        Region::Sloped { n, x0, u0, x1, u1 } => {
            let Ok(j) = Interval::open(x0, x1) else { return (ExtReal::ZERO, true) };
            let mass = mu.mass(&j);
            if mass == ExtReal::ZERO {
                return (ExtReal::ZERO, true);
            }
            if mass.is_pos_inf() {
                return (ExtReal::PosInf, true);
            }
            let s = &spec.intervals()[n].scale;
            let y = |x: f64| s.eval(x).map(|v| v.to_f64()).unwrap_or(f64::NAN);
            let (y0, y1) = (y(x0), y(x1));
            let val = |x: f64| -> f64 {
                if y0.is_infinite() {
                    u1
                } else if y1.is_infinite() {
                    u0
                } else {
                    u0 + (u1 - u0) * (y(x) - y0) / (y1 - y0)
                }
            };
            let mut acc = 0.0;
            for a in &mu.atoms {
                if j.contains(a.point) {
                    acc += a.mass * val(a.point).powi(2);
                }
            }
            acc += quad::integrate(|x| val(x).powi(2) * mu.ac_density(x), x0, x1, 1e-10);
            let (_, sing) = mu.lebesgue_decompose();
            if !sing.cantors.is_empty() || !sing.cascades.is_empty() {
                // Riemann–Stieltjes sum over the continuous singular part.
                let cells = 4096;
                let h = (x1 - x0) / cells as f64;
                let sing_only = MeasureSpec {
                    atoms: Vec::new(),
                    ..sing
                };
                for c in 0..cells {
                    let (a, b) = (x0 + c as f64 * h, x0 + (c + 1) as f64 * h);
                    if let Ok(cell) = Interval::open(a, b) {
                        acc += sing_only.mass(&cell).to_f64() * val(0.5 * (a + b)).powi(2);
                    }
                }
            }
            (ExtReal::from_f64(acc), false)
        }
    }
}

/// Energy of `u`: the scale part summed over effective intervals plus the
/// killing term.
pub fn energy(spec: &DiffusionSpec, u: &TestFunction) -> Result<EnergyReport> {
    let mut form = ExtReal::ZERO;
    for p in &u.pieces {
        form = form + piece_energy(spec, p)?;
    }
    let (mut killing, mut exact) = (ExtReal::ZERO, true);
    if let Some(k) = spec.killing() {
        let n_off = u.off.iter().filter(|(_, v)| *v != 0.0).count();
        let rs = regions(spec, u);
        let first_off = rs.len() - n_off;
        for (i, r) in rs.iter().enumerate() {
            let (v, ex) = square_integral(spec, k, r, i >= first_off);
            killing = killing + v;
            exact &= ex;
        }
    }
    Ok(EnergyReport {
        form,
        killing,
        killing_exact: exact,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DomainCheck {
    pub member: bool,
    pub reasons: Vec<String>,
}

/// Membership in the form domain: finite energy, square integrability
/// against `m + k`, and zero boundary values where a Dirichlet condition holds.
pub fn in_domain(spec: &DiffusionSpec, u: &TestFunction) -> Result<DomainCheck> {
    let mut reasons = Vec::new();
    let en = energy(spec, u)?;
    if !en.form.is_finite() {
        reasons.push("infinite energy".to_string());
    }
    let rs = regions(spec, u);
    let n_off = u.off.iter().filter(|(_, v)| *v != 0.0).count();
    let first_off = rs.len() - n_off;
    for (i, r) in rs.iter().enumerate() {
        let nonzero = match *r {
            Region::Constant { value, .. } => value != 0.0,
            Region::Sloped { u0, u1, .. } => u0 != 0.0 || u1 != 0.0,
            Region::Knot { value, .. } => value != 0.0,
        };
        if !nonzero {
            continue;
        }
        let (m2, _) = square_integral(spec, spec.speed(), r, i >= first_off);
        if !m2.is_finite() {
            reasons.push("not square integrable against the speed measure".to_string());
        }
    }
    if !en.killing.is_finite() {
        reasons.push("not square integrable against the killing measure".to_string());
    }
    for p in &u.pieces {
        let e = spec.interval(p.interval)?;
        let (l0, r0) = dirichlet_flags(spec, e);
        if let (Some(first), Some(last)) = (p.knots.first(), p.knots.last()) {
            if l0 && first.1 != 0.0 {
                reasons.push(format!("(L0) requires u({}) = 0", e.interval.a()));
            }
            if r0 && last.1 != 0.0 {
                reasons.push(format!("(R0) requires u({}) = 0", e.interval.b()));
            }
        }
    }
    Ok(DomainCheck {
        member: reasons.is_empty(),
        reasons,
    })
}

/// Energy of a function `phi` that is piecewise linear in `x` with knots
/// `(x_i, phi_i)` and constant outside them: `1/2 sum_n int phi'^2 / g_n dx`,
/// where `g_n` is the density of the absolutely continuous part of `ds_n`.
/// Cantor-gap families are summed in closed form over all generations.
pub fn energy_spatial(spec: &DiffusionSpec, knots: &[(f64, f64)]) -> Result<ExtReal> {
    let mut total = ExtReal::ZERO;
    for w in knots.windows(2) {
        let ((p, a), (q, b)) = (w[0], w[1]);
        if !(p < q) || a == b {
            continue;
        }
        let slope2 = ((b - a) / (q - p)).powi(2);
        for s in spec.explicit_scales() {
            let j = s.domain();
            let (u, v) = (p.max(j.a()), q.min(j.b()));
            if u < v {
                let r = s.ds().reciprocal_integral(u, v)?;
                total = total + r.value * (0.5 * slope2);
            }
        }
        for f in spec.families() {
            let r = f.set.gap_sum(p, q, 1.0 / f.coef, -f.exponent);
            total = total + r * (0.5 * slope2);
        }
    }
    Ok(total)
}
