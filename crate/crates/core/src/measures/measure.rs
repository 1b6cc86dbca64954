//! Radon measures on an interval as sums of closed-form components.

use crate::error::{Error, Result};
use crate::extended::ExtReal;
use crate::quad;

use super::cantor::{CantorCascade, CantorComponent, CantorSet, GapDensity};
use super::density::{DensitySegment, Primitive, Side};
use super::interval::Interval;
use super::ranges;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Atom {
    pub point: f64,
    pub mass: f64,
}

/// A measure on `carrier`: density segments, atoms, uniform Cantor measures,
/// cascades of Cantor copies and densities carried by Cantor gaps.
#[derive(Debug, Clone, PartialEq)]
pub struct MeasureSpec {
    pub carrier: Interval,
    pub segments: Vec<DensitySegment>,
    pub atoms: Vec<Atom>,
    pub cantors: Vec<CantorComponent>,
    pub cascades: Vec<CantorCascade>,
    pub gap_densities: Vec<GapDensity>,
}

/// Result of [`MeasureSpec::measure_of`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassReport {
    pub mass: ExtReal,
    /// The query interval reached outside the carrier and was clipped.
    pub clipped: bool,
}

/// Result of [`MeasureSpec::reciprocal_integral`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reciprocal {
    pub value: ExtReal,
    /// Finiteness is always decided symbolically; the value itself came from
    /// closed forms only when this is set.
    pub exact: bool,
}

impl MeasureSpec {
    pub fn zero(carrier: Interval) -> Self {
        MeasureSpec {
            carrier,
            segments: Vec::new(),
            atoms: Vec::new(),
            cantors: Vec::new(),
            cascades: Vec::new(),
            gap_densities: Vec::new(),
        }
    }

    /// Lebesgue measure on `carrier`.
    pub fn lebesgue(carrier: Interval) -> Self {
        Self::zero(carrier).with_segment(DensitySegment {
            support: carrier,
            primitive: Primitive::Constant(1.0),
        })
    }

    pub fn with_segment(mut self, seg: DensitySegment) -> Self {
        self.segments.push(seg);
        self
    }

    pub fn with_density(self, support: Interval, primitive: Primitive) -> Result<Self> {
        Ok(self.with_segment(DensitySegment::new(support, primitive)?))
    }

    pub fn with_atom(mut self, point: f64, mass: f64) -> Self {
        self.atoms.push(Atom { point, mass });
        self
    }

    pub fn with_cantor(mut self, c: CantorComponent) -> Self {
        self.cantors.push(c);
        self
    }

    pub fn with_cascade(mut self, c: CantorCascade) -> Self {
        self.cascades.push(c);
        self
    }

    pub fn with_gap_density(mut self, g: GapDensity) -> Self {
        self.gap_densities.push(g);
        self
    }

    /// Checks that every component sits inside the carrier.
    pub fn validate(&self) -> Result<()> {
        let c = &self.carrier;
        let inside = |a: f64, b: f64| a >= c.a() && b <= c.b();
        for s in &self.segments {
            s.primitive.validate()?;
            if !inside(s.support.a(), s.support.b()) {
                return Err(Error::InvalidMeasure(format!(
                    "density support {} leaves carrier {}",
                    s.support, c
                )));
            }
        }
        for a in &self.atoms {
            if !(a.mass.is_finite() && a.mass > 0.0) || !c.contains(a.point) {
                return Err(Error::InvalidMeasure(format!(
                    "atom at {} with mass {} must have positive mass inside {}",
                    a.point, a.mass, c
                )));
            }
        }
        for k in &self.cantors {
            if !inside(k.set.lo(), k.set.hi()) {
                return Err(Error::InvalidMeasure(format!("Cantor component leaves carrier {c}")));
            }
        }
        for k in &self.cascades {
            let (lo, hi) = k.hull();
            if !inside(lo, hi) {
                return Err(Error::InvalidMeasure(format!("Cantor cascade leaves carrier {c}")));
            }
        }
        for g in &self.gap_densities {
            if !inside(g.set.lo(), g.set.hi()) {
                return Err(Error::InvalidMeasure(format!("gap density leaves carrier {c}")));
            }
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.segments.iter().all(|s| s.primitive.is_zero())
            && self.atoms.is_empty()
            && self.cantors.is_empty()
            && self.cascades.is_empty()
            && self.gap_densities.is_empty()
    }

    pub fn has_atoms(&self) -> bool {
        !self.atoms.is_empty()
    }

    /// Mass of `j`, clipped to the carrier. Atoms respect the closedness flags.
    pub fn measure_of(&self, j: &Interval) -> MassReport {
        let clipped = !j.is_subset_of(&self.carrier);
        let mass = match j.intersect(&self.carrier) {
            Some(jj) => self.mass_unclipped(&jj),
            None => ExtReal::ZERO,
        };
        MassReport { mass, clipped }
    }

    /// Shorthand for `measure_of(j).mass`.
    pub fn mass(&self, j: &Interval) -> ExtReal {
        self.measure_of(j).mass
    }

    /// Mass of the open interval `(p, q)`; only differs from the closed one by atoms.
    pub fn mass_open(&self, p: f64, q: f64) -> ExtReal {
        match Interval::open(p, q) {
            Ok(j) => self.mass(&j),
            Err(_) => ExtReal::ZERO,
        }
    }

    fn mass_unclipped(&self, j: &Interval) -> ExtReal {
        let (p, q) = (j.a(), j.b());
        let mut total = ExtReal::ZERO;
        for a in &self.atoms {
            if j.contains(a.point) {
                total = total + ExtReal::Finite(a.mass);
            }
        }
        for s in &self.segments {
            total = total + s.mass(j);
        }
        for c in &self.cantors {
            total = total + ExtReal::from_f64(c.mass_between(p, q));
        }
        for c in &self.cascades {
            total = total + c.mass_between(p, q);
        }
        for g in &self.gap_densities {
            total = total + g.mass_between(p, q);
        }
        total
    }

    /// Signed mass of `[base, x]` (negated mass of `[x, base]` when `x < base`).
    /// Infinite or open-endpoint arguments yield the corresponding limits.
    pub fn stieltjes(&self, base: f64, x: f64) -> ExtReal {
        if x == base {
            return ExtReal::ZERO;
        }
        if x > base {
            let j = Interval::new(base, x, true, x.is_finite()).expect("ordered endpoints");
            self.mass(&j)
        } else {
            let j = Interval::new(x, base, x.is_finite(), true).expect("ordered endpoints");
            -self.mass(&j)
        }
    }

    /// Splits into the absolutely continuous part (densities, gap densities,
    /// uniform measures on positive-length Cantor sets) and the singular part
    /// (atoms, uniform measures on null Cantor sets and their cascades).
    pub fn lebesgue_decompose(&self) -> (MeasureSpec, MeasureSpec) {
        let mut ac = MeasureSpec::zero(self.carrier);
        let mut sing = MeasureSpec::zero(self.carrier);
        ac.segments = self.segments.clone();
        ac.gap_densities = self.gap_densities.clone();
        sing.atoms = self.atoms.clone();
        for c in &self.cantors {
            if c.is_singular() {
                sing.cantors.push(c.clone());
            } else {
                ac.cantors.push(c.clone());
            }
        }
        for c in &self.cascades {
            if c.first.is_singular() {
                sing.cascades.push(c.clone());
            } else {
                ac.cascades.push(c.clone());
            }
        }
        (ac, sing)
    }

    pub fn is_absolutely_continuous(&self) -> bool {
        self.lebesgue_decompose().1.is_zero()
    }

    /// Image measure under `x -> k x + t`.
    pub fn pushforward_affine(&self, k: f64, t: f64) -> Result<MeasureSpec> {
        if k == 0.0 || !k.is_finite() || !t.is_finite() {
            return Err(Error::InvalidMeasure(format!("affine map needs finite nonzero scale, got {k}")));
        }
        let map_interval = |j: &Interval| -> Result<Interval> {
            let (a, b) = (k * j.a() + t, k * j.b() + t);
            if k > 0.0 {
                Interval::new(a, b, j.left_closed(), j.right_closed())
            } else {
                Interval::new(b, a, j.right_closed(), j.left_closed())
            }
        };
        Ok(MeasureSpec {
            carrier: map_interval(&self.carrier)?,
            segments: self
                .segments
                .iter()
                .map(|s| s.pushforward(k, t))
                .collect::<Result<_>>()?,
            atoms: self
                .atoms
                .iter()
                .map(|a| Atom {
                    point: k * a.point + t,
                    mass: a.mass,
                })
                .collect(),
            cantors: self
                .cantors
                .iter()
                .map(|c| c.pushforward(k, t))
                .collect::<Result<_>>()?,
            cascades: self
                .cascades
                .iter()
                .map(|c| c.pushforward(k, t))
                .collect::<Result<_>>()?,
            gap_densities: self
                .gap_densities
                .iter()
                .map(|g| g.pushforward(k, t))
                .collect::<Result<_>>()?,
        })
    }

    /// Componentwise sum on the same carrier.
    pub fn add(&self, other: &MeasureSpec) -> MeasureSpec {
        let mut out = self.clone();
        out.segments.extend(other.segments.iter().cloned());
        out.atoms.extend(other.atoms.iter().cloned());
        out.cantors.extend(other.cantors.iter().cloned());
        out.cascades.extend(other.cascades.iter().cloned());
        out.gap_densities.extend(other.gap_densities.iter().cloned());
        out
    }

    /// Restriction of the density parts to `j`; atoms and Cantor-type parts
    /// are kept only when they lie inside `j`.
    pub fn restrict(&self, j: &Interval) -> MeasureSpec {
        let mut out = MeasureSpec::zero(*j);
        for s in &self.segments {
            if let Some(sup) = s.support.intersect(j) {
                out.segments.push(DensitySegment {
                    support: sup,
                    primitive: s.primitive,
                });
            }
        }
        out.atoms = self.atoms.iter().filter(|a| j.contains(a.point)).cloned().collect();
        let within = |lo: f64, hi: f64| lo >= j.a() && hi <= j.b();
        out.cantors = self
            .cantors
            .iter()
            .filter(|c| within(c.set.lo(), c.set.hi()))
            .cloned()
            .collect();
        out.cascades = self
            .cascades
            .iter()
            .filter(|c| {
                let (lo, hi) = c.hull();
                within(lo, hi)
            })
            .cloned()
            .collect();
        out.gap_densities = self
            .gap_densities
            .iter()
            .filter(|g| within(g.set.lo(), g.set.hi()))
            .cloned()
            .collect();
        out
    }

    /// Whether every open sub-interval of the carrier has positive mass.
    /// Cantor sets, cascades and atoms are nowhere dense, so the carrier must be
    /// covered (up to finitely many points) by closures of positive density
    /// supports and hulls of gap densities.
    pub fn is_fully_supported(&self) -> bool {
        let mut covers = Vec::new();
        for s in &self.segments {
            if !s.primitive.is_zero() {
                covers.push((s.support.a(), s.support.b()));
            }
        }
        for g in &self.gap_densities {
            covers.push((g.set.lo(), g.set.hi()));
        }
        let rest = ranges::subtract(&[(self.carrier.a(), self.carrier.b())], &covers);
        rest.iter().all(|(a, b)| !(a < b))
    }

    /// Every compact sub-interval of `region` has finite mass.
    pub fn is_radon_on(&self, region: &Interval) -> std::result::Result<(), String> {
        let probe = |c: f64| -> Option<Interval> {
            if !region.contains(c) {
                return None;
            }
            let d = 1e-6 * c.abs().max(1.0);
            Interval::closed(c - d, c + d).ok().and_then(|n| n.intersect(region))
        };
        for s in &self.segments {
            if let Some(c) = s.primitive.critical_point() {
                if let Some(n) = probe(c) {
                    if s.mass(&n).is_pos_inf() {
                        return Err(format!("density {} is not locally integrable at {c}", s.primitive.describe()));
                    }
                }
            }
        }
        for k in &self.cascades {
            if let Some(n) = probe(k.center) {
                if k.mass_between(n.a(), n.b()).is_pos_inf() {
                    return Err(format!("Cantor copies accumulate with infinite mass at {}", k.center));
                }
            }
        }
        for g in &self.gap_densities {
            let total = g.mass_between(g.set.lo(), g.set.hi());
            if total.is_pos_inf() && cantor_set_meets(&g.set, region) {
                return Err(format!("gap density {} diverges near its Cantor set", g.set.describe()));
            }
        }
        Ok(())
    }

    /// Merges overlapping and adjacent constant densities, drops zero densities
    /// and rewrites gap densities of exponent 0 over null Cantor sets as
    /// constants on the hull (they agree almost everywhere).
    pub fn simplify(&self) -> MeasureSpec {
        let mut out = self.clone();
        let mut constants: Vec<(f64, f64, f64)> = Vec::new();
        let mut others = Vec::new();
        for s in &out.segments {
            match s.primitive {
                Primitive::Constant(c) if c == 0.0 => {}
                Primitive::Constant(c) => constants.push((s.support.a(), s.support.b(), c)),
                _ => others.push(*s),
            }
        }
        let mut gaps = Vec::new();
        for g in &out.gap_densities {
            if g.exponent == 0.0 && !g.set.is_fat() {
                constants.push((g.set.lo(), g.set.hi(), g.coef));
            } else {
                gaps.push(g.clone());
            }
        }
        let mut cuts: Vec<f64> = constants.iter().flat_map(|&(a, b, _)| [a, b]).collect();
        cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
        cuts.dedup();
        let mut pieces: Vec<(f64, f64, f64)> = Vec::new();
        for w in cuts.windows(2) {
            let (a, b) = (w[0], w[1]);
            let mid = midpoint(a, b);
            let v: f64 = constants
                .iter()
                .filter(|&&(ca, cb, _)| ca <= mid && mid <= cb && ca <= a && cb >= b)
                .map(|&(_, _, c)| c)
                .sum();
            if v == 0.0 {
                continue;
            }
            match pieces.last_mut() {
                Some(last) if last.1 == a && last.2 == v => last.1 = b,
                _ => pieces.push((a, b, v)),
            }
        }
        let carrier = out.carrier;
        let mut segs: Vec<DensitySegment> = pieces
            .into_iter()
            .map(|(a, b, v)| DensitySegment {
                support: Interval::new(
                    a,
                    b,
                    a.is_finite() && carrier.contains(a),
                    b.is_finite() && carrier.contains(b),
                )
                .expect("ordered pieces"),
                primitive: Primitive::Constant(v),
            })
            .collect();
        segs.extend(others);
        segs.sort_by(|x, y| x.support.a().partial_cmp(&y.support.a()).unwrap());
        out.segments = segs;
        out.gap_densities = gaps;
        out
    }

    /// The constant `c` when the measure is `c` times Lebesgue measure on the
    /// whole carrier (after simplification).
    pub fn as_uniform_density(&self) -> Option<f64> {
        let s = self.simplify();
        if !s.atoms.is_empty() || !s.cantors.is_empty() || !s.cascades.is_empty() || !s.gap_densities.is_empty() {
            return None;
        }
        match s.segments.as_slice() {
            [seg] => match seg.primitive {
                Primitive::Constant(c) if seg.support.a() <= s.carrier.a() && seg.support.b() >= s.carrier.b() => {
                    Some(c)
                }
                _ => None,
            },
            _ => None,
        }
    }

    /// Pointwise value of the absolutely continuous density.
    pub fn ac_density(&self, x: f64) -> f64 {
        let mut v: f64 = self.segments.iter().map(|s| s.value(x)).sum();
        for g in &self.gap_densities {
            v += g.value(x);
        }
        for c in self.cantors.iter().filter(|c| !c.is_singular()) {
            if c.set.contains(x, 200) {
                v += c.total_mass / c.set.lebesgue_measure();
            }
        }
        v
    }

    /// Points where the ac density may change form.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts = Vec::new();
        for s in &self.segments {
            pts.push(s.support.a());
            pts.push(s.support.b());
            if let Some(c) = s.primitive.critical_point() {
                pts.push(c);
            }
        }
        for g in &self.gap_densities {
            pts.push(g.set.lo());
            pts.push(g.set.hi());
        }
        for c in self.cantors.iter().filter(|c| !c.is_singular()) {
            pts.push(c.set.lo());
            pts.push(c.set.hi());
        }
        pts.retain(|p| p.is_finite());
        pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
        pts.dedup();
        pts
    }

    /// Positive segments whose support covers `(u, v)`.
    fn active_primitives(&self, u: f64, v: f64) -> Vec<Primitive> {
        let mut constant = 0.0;
        let mut out = Vec::new();
        for s in &self.segments {
            if s.primitive.is_zero() || !(s.support.a() <= u && s.support.b() >= v) {
                continue;
            }
            match s.primitive {
                Primitive::Constant(c) => constant += c,
                p => out.push(p),
            }
        }
        if constant > 0.0 {
            out.push(Primitive::Constant(constant));
        }
        out
    }

    fn pieces(&self, p: f64, q: f64) -> Vec<(f64, f64)> {
        let mut cuts = vec![p];
        cuts.extend(self.breakpoints().into_iter().filter(|&x| x > p && x < q));
        cuts.push(q);
        cuts.windows(2).map(|w| (w[0], w[1])).filter(|(a, b)| a < b).collect()
    }

    /// Local power exponent of the ac density at `x` from `side`: the smallest
    /// exponent among the active primitives (the fastest blow-up dominates a
    /// sum), `+inf` if no positive primitive is active there.
    pub fn local_exponent(&self, x: f64, side: Side) -> ExtReal {
        let mut e = ExtReal::PosInf;
        for s in &self.segments {
            if s.primitive.is_zero() {
                continue;
            }
            let covers = match side {
                Side::Right => s.support.a() <= x && x < s.support.b(),
                Side::Left => s.support.a() < x && x <= s.support.b(),
            };
            if covers {
                e = e.min(s.primitive.local_exponent(x, side));
            }
        }
        e
    }

    /// Lebesgue measure of the part of `(p, q)` where the ac density vanishes.
    pub fn null_density_length(&self, p: f64, q: f64) -> f64 {
        let covers: Vec<(f64, f64)> = self
            .segments
            .iter()
            .filter(|s| !s.primitive.is_zero())
            .map(|s| (s.support.a(), s.support.b()))
            .collect();
        let rest = ranges::subtract(&[(p, q)], &covers);
        let fat: Vec<&CantorSet> = self
            .cantors
            .iter()
            .filter(|c| !c.is_singular())
            .map(|c| &c.set)
            .collect();
        let mut out = 0.0;
        for (u, v) in rest {
            if u.is_infinite() || v.is_infinite() {
                return f64::INFINITY;
            }
            let mut covered = 0.0;
            let mut sets: Vec<&CantorSet> = self.gap_densities.iter().map(|g| &g.set).collect();
            sets.extend(fat.iter().copied());
            sets.dedup_by(|a, b| a == b);
            for set in sets {
                let has_gaps = self.gap_densities.iter().any(|g| &g.set == set);
                let has_body = fat.iter().any(|s| *s == set);
                let (a, b) = (u.max(set.lo()), v.min(set.hi()));
                if a >= b {
                    continue;
                }
                let body = set.lebesgue_in(a, b);
                if has_gaps {
                    covered += (b - a) - body;
                }
                if has_body {
                    covered += body;
                }
            }
            out += ((v - u) - covered).max(0.0);
        }
        out
    }

    /// `int_p^q 1/g dx` where `g` is the ac density, including the gap
    /// structure of Cantor-type parts. Points where `g = 0` on a set of positive
    /// length make the integral infinite.
    pub fn reciprocal_integral(&self, p: f64, q: f64) -> Result<Reciprocal> {
        let mut total = ExtReal::ZERO;
        let mut exact = true;
        for (u, v) in self.pieces(p, q) {
            let mid = midpoint(u, v);
            let families: Vec<&GapDensity> = self
                .gap_densities
                .iter()
                .filter(|g| g.set.lo() <= u && g.set.hi() >= v)
                .collect();
            let bodies: Vec<&CantorComponent> = self
                .cantors
                .iter()
                .filter(|c| !c.is_singular() && c.set.lo() <= u && c.set.hi() >= v)
                .collect();
            let prims = self.active_primitives(u, v);
            if families.is_empty() && bodies.is_empty() {
                let (val, ex) = reciprocal_over_piece(&prims, u, v);
                exact &= ex;
                total = total + val;
                continue;
            }
            if !prims.is_empty() || families.len() > 1 {
                return Err(Error::Undecidable(format!(
                    "1/density near {mid} mixes several component types"
                )));
            }
            let set = families
                .first()
                .map(|g| &g.set)
                .or_else(|| bodies.first().map(|c| &c.set))
                .expect("nonempty");
            if let Some(g) = families.first() {
                total = total + g.reciprocal_integral(u, v);
            } else if set.gap_sum(u, v, 1.0, 0.0).to_f64() > 0.0 {
                total = ExtReal::PosInf;
            }
            let body = set.lebesgue_in(u, v);
            if body > 0.0 {
                match bodies.iter().find(|c| &c.set == set) {
                    Some(c) => {
                        total = total + ExtReal::from_f64(body * set.lebesgue_measure() / c.total_mass);
                    }
                    None => total = ExtReal::PosInf,
                }
            }
        }
        Ok(Reciprocal { value: total, exact })
    }
}

/// `K ∩ region` is nonempty.
fn cantor_set_meets(set: &CantorSet, region: &Interval) -> bool {
    let (u, v) = (region.a().max(set.lo()), region.b().min(set.hi()));
    if u > v {
        return false;
    }
    let end_in = |x: f64| region.contains(x) && set.contains(x, 200);
    if end_in(u) || end_in(v) {
        return true;
    }
    if u == v {
        return false;
    }
    match set.gap_containing(midpoint(u, v), 200) {
        Some((g0, g1)) => !(u >= g0 && v <= g1),
        None => true,
    }
}

pub(crate) fn midpoint(u: f64, v: f64) -> f64 {
    match (u.is_finite(), v.is_finite()) {
        (true, true) => 0.5 * (u + v),
        (true, false) => u + 1.0,
        (false, true) => v - 1.0,
        (false, false) => 0.0,
    }
}

/// Growth exponent at infinity: `g(x) ~ |x|^e`.
fn growth_exponent(p: &Primitive) -> f64 {
    match *p {
        Primitive::Constant(_) => 0.0,
        Primitive::Power { exponent, .. } => exponent,
        Primitive::ExpRecip { .. } => -2.0,
    }
}

/// `int_u^v 1/(sum of prims)` on a piece where the primitives are smooth and
/// positive inside.
fn reciprocal_over_piece(prims: &[Primitive], u: f64, v: f64) -> (ExtReal, bool) {
    if prims.is_empty() {
        return (ExtReal::PosInf, true);
    }
    if prims.len() == 1 {
        if let Some(r) = prims[0].reciprocal() {
            return (r.integral(u, v), true);
        }
    }
    let finite_at = |x: f64, side: Side| -> bool {
        if x.is_infinite() {
            let g = prims.iter().map(growth_exponent).fold(f64::NEG_INFINITY, f64::max);
            g > 1.0
        } else {
            let e = prims
                .iter()
                .map(|p| p.local_exponent(x, side))
                .fold(ExtReal::PosInf, ExtReal::min);
            e < ExtReal::Finite(1.0)
        }
    };
    if !finite_at(u, Side::Right) || !finite_at(v, Side::Left) {
        return (ExtReal::PosInf, true);
    }
    let f = |x: f64| {
        let d: f64 = prims.iter().map(|p| p.value(x)).sum();
        if d > 0.0 {
            1.0 / d
        } else {
            0.0
        }
    };
    (ExtReal::from_f64(quad::integrate(f, u, v, 1e-12)), false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::cantor::CantorCascade;

    fn unit_cantor() -> CantorComponent {
        CantorComponent::new(CantorSet::standard(0.0, 1.0).unwrap(), 1.0).unwrap()
    }

    #[test]
    fn masses() {
        let leb = MeasureSpec::lebesgue(Interval::open(0.0, 1.0).unwrap());
        assert_eq!(leb.mass(&Interval::open(0.0, 1.0).unwrap()), ExtReal::Finite(1.0));
        let c = MeasureSpec::zero(Interval::closed(0.0, 1.0).unwrap()).with_cantor(unit_cantor());
        let m = c.mass(&Interval::closed(0.0, 1.0 / 3.0).unwrap()).finite().unwrap();
        assert!((m - 0.5).abs() < 1e-12);
        let mixed = MeasureSpec::lebesgue(Interval::open(-1.0, 1.0).unwrap()).with_atom(0.0, 1.0);
        let m = mixed.mass(&Interval::new(0.0, 1.0, true, false).unwrap());
        assert_eq!(m, ExtReal::Finite(2.0));
        let r = mixed.measure_of(&Interval::open(0.0, 5.0).unwrap());
        assert!(r.clipped);
        assert_eq!(r.mass, ExtReal::Finite(1.0));
    }

    #[test]
    fn stieltjes_limits() {
        let inv_sq = MeasureSpec::zero(Interval::open(0.0, f64::INFINITY).unwrap())
            .with_density(
                Interval::open(0.0, f64::INFINITY).unwrap(),
                Primitive::Power { coef: 1.0, center: 0.0, exponent: -2.0 },
            )
            .unwrap();
        assert_eq!(inv_sq.stieltjes(1.0, 0.0), ExtReal::NegInf);
        assert!((inv_sq.stieltjes(1.0, 2.0).finite().unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn decomposition_and_support() {
        let first = CantorComponent::new(CantorSet::standard(0.5, 1.0).unwrap(), 1.0).unwrap();
        let j = Interval::new(0.0, 1.0, false, true).unwrap();
        let mu = MeasureSpec::lebesgue(j).with_cascade(CantorCascade::new(first, 0.0, 0.5, 1.0, None).unwrap());
        let (ac, sing) = mu.lebesgue_decompose();
        assert_eq!(ac, MeasureSpec::lebesgue(j));
        assert_eq!(sing.cascades.len(), 1);
        assert!(mu.is_fully_supported());
        let c = MeasureSpec::zero(Interval::closed(0.0, 1.0).unwrap()).with_cantor(unit_cantor());
        assert!(!c.is_fully_supported());
    }

    #[test]
    fn gap_density_simplifies_to_lebesgue() {
        let k = CantorSet::standard(0.0, 1.0).unwrap();
        let mu = MeasureSpec::lebesgue(Interval::new(f64::NEG_INFINITY, 0.0, false, true).unwrap())
            .with_gap_density(GapDensity::new(k, 1.0, 0.0).unwrap())
            .with_density(Interval::new(1.0, f64::INFINITY, true, false).unwrap(), Primitive::Constant(1.0))
            .unwrap();
        let mu = MeasureSpec { carrier: Interval::real_line(), ..mu };
        assert_eq!(mu.simplify().as_uniform_density(), Some(1.0));
    }

    #[test]
    fn reciprocal_integrals() {
        let cube = MeasureSpec::lebesgue(Interval::real_line());
        let r = cube.reciprocal_integral(-1.0, 1.0).unwrap();
        assert_eq!(r.value, ExtReal::Finite(2.0));
        let sq = MeasureSpec::zero(Interval::real_line())
            .with_density(Interval::real_line(), Primitive::Power { coef: 1.0, center: 0.0, exponent: 2.0 })
            .unwrap();
        assert_eq!(sq.reciprocal_integral(-1.0, 1.0).unwrap().value, ExtReal::PosInf);
        let e = MeasureSpec::zero(Interval::open(0.0, f64::INFINITY).unwrap())
            .with_density(
                Interval::open(0.0, f64::INFINITY).unwrap(),
                Primitive::ExpRecip { coef: 1.0, center: 0.0, rate: 1.0 },
            )
            .unwrap();
        let r = e.reciprocal_integral(0.0, 1.0).unwrap();
        assert!(r.value.is_finite() && !r.exact);
    }
}
