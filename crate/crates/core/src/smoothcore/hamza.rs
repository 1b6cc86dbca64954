//! Closability of the energy `1/2 int u'^2 d nu` on smooth functions, and the
//! effective intervals of its closure.

use crate::error::{Error, Result};
use crate::extended::ExtReal;
use crate::measures::{DensitySegment, Interval, MeasureSpec, Primitive, Side};
use crate::quad;
use crate::scale::ScaleFunction;

use crate::dirichlet::DiffusionSpec;

/// Divergence threshold of the numeric regularity test.
pub const NUMERIC_DIVERGENCE_THRESHOLD: f64 = 1e12;

/// The energy measure `nu` on the real line. Density segments give the ac
/// part; atoms and Cantor-type parts may be present to describe forms that
/// are not closable.
#[derive(Debug, Clone, PartialEq)]
pub struct HamzaDensity {
    pub nu: MeasureSpec,
}

impl HamzaDensity {
    pub fn new(nu: MeasureSpec) -> Self {
        HamzaDensity {
            nu: MeasureSpec {
                carrier: Interval::real_line(),
                ..nu
            },
        }
    }

    pub fn from_segments(segments: Vec<DensitySegment>) -> Self {
        let mut nu = MeasureSpec::zero(Interval::real_line());
        nu.segments = segments;
        HamzaDensity { nu }
    }

    /// Cut points of the density catalog, without infinities.
    fn cuts(&self) -> Vec<f64> {
        let mut pts = Vec::new();
        for s in &self.nu.segments {
            pts.push(s.support.a());
            pts.push(s.support.b());
            if let Some(c) = s.primitive.critical_point() {
                pts.push(c);
            }
        }
        pts.retain(|p| p.is_finite());
        pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
        pts.dedup();
        pts
    }

    fn pieces(&self) -> Vec<(f64, f64)> {
        let mut cuts = vec![f64::NEG_INFINITY];
        cuts.extend(self.cuts());
        cuts.push(f64::INFINITY);
        cuts.windows(2).map(|w| (w[0], w[1])).collect()
    }

    /// Positive primitives active on the whole of `(u, v)`.
    fn active(&self, u: f64, v: f64) -> Vec<Primitive> {
        self.nu
            .segments
            .iter()
            .filter(|s| !s.primitive.is_zero() && s.support.a() <= u && s.support.b() >= v)
            .map(|s| s.primitive)
            .collect()
    }

    fn check_catalog(&self) -> Result<()> {
        if !self.nu.gap_densities.is_empty() {
            return Err(Error::Undecidable("regularity of gap densities is not decided".into()));
        }
        Ok(())
    }
}

/// `R(a)`: maximal open intervals of points near which `1/a` is integrable.
/// Inside a piece with a positive primitive every point is regular; a cut
/// point is regular when the density's local exponent is below 1 on both
/// sides.
pub fn regular_set(a: &HamzaDensity) -> Result<Vec<Interval>> {
    a.check_catalog()?;
    regular_set_by(a, |c, _| symbolic_point_regular(a, c))
}

fn symbolic_point_regular(a: &HamzaDensity, c: f64) -> bool {
    let one = ExtReal::Finite(1.0);
    a.nu.local_exponent(c, Side::Left) < one && a.nu.local_exponent(c, Side::Right) < one
}

fn regular_set_by(a: &HamzaDensity, point_regular: impl Fn(f64, (f64, f64)) -> bool) -> Result<Vec<Interval>> {
    let pieces = a.pieces();
    let mut out: Vec<(f64, f64)> = Vec::new();
    let mut open: Option<f64> = None;
    for (k, &(u, v)) in pieces.iter().enumerate() {
        let active = !a.active(u, v).is_empty();
        if !active {
            if let Some(start) = open.take() {
                out.push((start, u));
            }
            continue;
        }
        match open {
            None => open = Some(u),
            Some(start) => {
                let prev = pieces[k - 1];
                if !point_regular(u, (prev.0, v)) {
                    out.push((start, u));
                    open = Some(u);
                }
            }
        }
    }
    if let Some(start) = open {
        out.push((start, f64::INFINITY));
    }
    out.into_iter().map(|(p, q)| Interval::open(p, q)).collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericRegularSet {
    pub intervals: Vec<Interval>,
    /// Always `false`: divergence of an improper integral cannot be certified
    /// by quadrature.
    pub certified: bool,
}

/// Numeric variant of [`regular_set`]: the integral of `1/a` towards each cut
/// point is refined on shrinking windows and declared divergent once it
/// exceeds `threshold`.
pub fn regular_set_numeric(a: &HamzaDensity, threshold: f64) -> Result<NumericRegularSet> {
    let intervals = regular_set_by(a, |c, (u, v)| {
        let left = side_integral(a, c, u, -1.0, threshold);
        let right = side_integral(a, c, v, 1.0, threshold);
        left && right
    })?;
    Ok(NumericRegularSet {
        intervals,
        certified: false,
    })
}

fn side_integral(a: &HamzaDensity, c: f64, far: f64, dir: f64, threshold: f64) -> bool {
    let h = if far.is_finite() { (far - c).abs().min(1.0) } else { 1.0 };
    let f = |x: f64| {
        let d = a.nu.ac_density(x);
        if d > 0.0 {
            1.0 / d
        } else {
            f64::INFINITY
        }
    };
    let mut acc = 0.0;
    let mut outer = h;
    for _ in 0..40 {
        let inner = outer / 4.0;
        let (p, q) = if dir > 0.0 { (c + inner, c + outer) } else { (c - outer, c - inner) };
        let part = quad::integrate(f, p, q, 1e-10);
        if !part.is_finite() {
            return false;
        }
        acc += part;
        if acc > threshold {
            return false;
        }
        outer = inner;
    }
    true
}

#[derive(Debug, Clone, PartialEq)]
pub enum HamzaVerdict {
    Closable,
    NotClosable(String),
}

/// Closability: `nu` is absolutely continuous and its density vanishes almost
/// everywhere on the singular set `S(a)`.
pub fn hamza_closable(nu: &HamzaDensity) -> Result<HamzaVerdict> {
    let (ac, sing) = nu.nu.lebesgue_decompose();
    if !sing.is_zero() {
        return Ok(HamzaVerdict::NotClosable(
            "condition (1): nu is not absolutely continuous".into(),
        ));
    }
    // Uniform measures on Cantor sets of positive length.
    for c in &ac.cantors {
        let (lo, hi) = (c.set.lo(), c.set.hi());
        let constant_cover: Vec<(f64, f64)> = ac
            .segments
            .iter()
            .filter(|s| matches!(s.primitive, Primitive::Constant(v) if v > 0.0))
            .map(|s| (s.support.a(), s.support.b()))
            .collect();
        let uncovered = crate::measures::ranges::subtract(&[(lo, hi)], &constant_cover);
        if uncovered.iter().all(|(u, v)| !(u < v)) {
            continue;
        }
        let touched = ac
            .segments
            .iter()
            .any(|s| !s.primitive.is_zero() && s.support.a() < hi && s.support.b() > lo);
        if !touched {
            return Ok(HamzaVerdict::NotClosable(format!(
                "condition (2): density is positive on {} inside the singular set",
                c.set.describe()
            )));
        }
        return Err(Error::Undecidable(format!(
            "density on {} is only partly covered by segments",
            c.set.describe()
        )));
    }
    if !ac.cascades.is_empty() {
        return Err(Error::Undecidable("cascades of Cantor bodies are not decided".into()));
    }
    let a = HamzaDensity::new(ac);
    let regular = regular_set(&a)?;
    // On every piece outside R(a) the density must be the zero primitive.
    for (u, v) in a.pieces() {
        let mid = crate::measures::measure::midpoint(u, v);
        let inside = regular.iter().any(|r| r.contains(mid));
        if !inside && !a.active(u, v).is_empty() {
            return Ok(HamzaVerdict::NotClosable(format!(
                "condition (2): density is positive on ({u}, {v}) inside the singular set"
            )));
        }
    }
    Ok(HamzaVerdict::Closable)
}

/// Effective intervals of the closure: one per component of `R(a)`, with
/// `s_n(x) = int_{e_n}^x 1/a`, an endpoint included when it is finite with a
/// finite scale limit. The state space is the real line with Lebesgue speed
/// measure; use [`DiffusionSpec::with_speed`] for another reference measure.
pub fn intervals_from_density(a: &HamzaDensity) -> Result<DiffusionSpec> {
    match hamza_closable(a)? {
        HamzaVerdict::Closable => {}
        HamzaVerdict::NotClosable(why) => return Err(Error::Precondition(format!("not closable: {why}"))),
    }
    let (ac, _) = a.nu.lebesgue_decompose();
    let a = HamzaDensity::new(ac);
    let mut spec = DiffusionSpec::with_lebesgue_speed(Interval::real_line());
    for r in regular_set(&a)? {
        let (p, q) = (r.a(), r.b());
        let mut ds = MeasureSpec::zero(r);
        for (u, v) in a.pieces() {
            if u < p || v > q {
                continue;
            }
            let prims = a.active(u, v);
            let recip = match prims.as_slice() {
                [one] => one.reciprocal(),
                _ => None,
            };
            let Some(recip) = recip else {
                return Err(Error::Undecidable(format!(
                    "1/a on ({u}, {v}) has no closed-form antiderivative in the catalog"
                )));
            };
            ds.segments.push(DensitySegment {
                support: Interval::open(u, v)?,
                primitive: recip,
            });
        }
        let probe = ScaleFunction::from_measure(r, None, ds.clone())?;
        let left_closed = p.is_finite() && probe.left_limit().is_finite();
        let right_closed = q.is_finite() && probe.right_limit().is_finite();
        let j = Interval::new(p, q, left_closed, right_closed)?;
        let s = ScaleFunction::from_measure(j, Some(probe.base()), ds)?.recognize();
        spec = spec.with_interval(s);
    }
    Ok(spec)
}
