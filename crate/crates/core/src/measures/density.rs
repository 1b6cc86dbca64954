//! Closed-form density catalog with exact antiderivatives.

use crate::error::{Error, Result};
use crate::extended::ExtReal;

use super::interval::Interval;

/// Density primitives whose antiderivatives and endpoint limits are known in
/// closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Primitive {
    /// `c`, with `c >= 0`.
    Constant(f64),
    /// `coef * |x - center|^exponent`, `coef > 0`. Exponent `-1` is the
    /// logarithmic-derivative case.
    Power { coef: f64, center: f64, exponent: f64 },
    /// `coef * |rate| / u^2 * exp(rate / u)` with `u = x - center`; the
    /// derivative of `-sign(rate) * coef * exp(rate / u)`. With `rate = 1` and
    /// `center = 0` this is the derivative of `-exp(1/x)`.
    ExpRecip { coef: f64, center: f64, rate: f64 },
}

/// Side from which a point is approached.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl Primitive {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            Primitive::Constant(c) => c.is_finite() && c >= 0.0,
            Primitive::Power {
                coef,
                center,
                exponent,
            } => coef.is_finite() && coef > 0.0 && center.is_finite() && exponent.is_finite(),
            Primitive::ExpRecip { coef, center, rate } => {
                coef.is_finite() && coef > 0.0 && center.is_finite() && rate.is_finite() && rate != 0.0
            }
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidMeasure(format!("bad density primitive {self:?}")))
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Primitive::Constant(c) if *c == 0.0)
    }

    /// Pointwise value; singular points return `+inf` (or `0` on the side where
    /// the exponential factor vanishes).
    pub fn value(&self, x: f64) -> f64 {
        match *self {
            Primitive::Constant(c) => c,
            Primitive::Power {
                coef,
                center,
                exponent,
            } => coef * (x - center).abs().powf(exponent),
            Primitive::ExpRecip { coef, center, rate } => {
                let u = x - center;
                if u == 0.0 {
                    return 0.0;
                }
                let t = rate / u;
                let v = coef * rate.abs() / (u * u) * t.exp();
                if v.is_nan() {
                    0.0
                } else {
                    v
                }
            }
        }
    }

    /// Breakpoints where the primitive is singular or vanishes.
    pub fn critical_point(&self) -> Option<f64> {
        match *self {
            Primitive::Constant(_) => None,
            Primitive::Power { center, .. } | Primitive::ExpRecip { center, .. } => Some(center),
        }
    }

    /// Exact mass over `[p, q]` (`p < q`, possibly infinite).
    pub fn integral(&self, p: f64, q: f64) -> ExtReal {
        debug_assert!(p < q);
        match *self {
            Primitive::Constant(c) => ExtReal::from_f64(q - p) * c,
            Primitive::Power {
                coef,
                center,
                exponent,
            } => {
                if p < center && center < q {
                    power_side_mass(coef, exponent, 0.0, center - p)
                        + power_side_mass(coef, exponent, 0.0, q - center)
                } else if q <= center {
                    power_side_mass(coef, exponent, center - q, center - p)
                } else {
                    power_side_mass(coef, exponent, p - center, q - center)
                }
            }
            Primitive::ExpRecip { coef, center, rate } => {
                let g = |x: f64, side: Side| exp_recip_antiderivative(coef, center, rate, x, side);
                if p < center && center < q {
                    (g(center, Side::Left) - g(p, Side::Right))
                        + (g(q, Side::Left) - g(center, Side::Right))
                } else {
                    g(q, Side::Left) - g(p, Side::Right)
                }
            }
        }
    }

    /// Local power-law exponent of the density at `p` approached from `side`:
    /// `0` at regular points, the exponent at a power center, `-inf` where the
    /// density blows up faster than any power and `+inf` where it vanishes
    /// faster than any power (or identically).
    pub fn local_exponent(&self, p: f64, side: Side) -> ExtReal {
        match *self {
            Primitive::Constant(c) => {
                if c > 0.0 {
                    ExtReal::ZERO
                } else {
                    ExtReal::PosInf
                }
            }
            Primitive::Power {
                center, exponent, ..
            } => {
                if p == center {
                    ExtReal::Finite(exponent)
                } else {
                    ExtReal::ZERO
                }
            }
            Primitive::ExpRecip { center, rate, .. } => {
                if p != center {
                    return ExtReal::ZERO;
                }
                let sigma = if side == Side::Right { 1.0 } else { -1.0 };
                if rate * sigma > 0.0 {
                    ExtReal::NegInf
                } else {
                    ExtReal::PosInf
                }
            }
        }
    }

    /// `1 / density` when it stays inside the catalog.
    pub fn reciprocal(&self) -> Option<Primitive> {
        match *self {
            Primitive::Constant(c) if c > 0.0 => Some(Primitive::Constant(1.0 / c)),
            Primitive::Constant(_) => None,
            Primitive::Power {
                coef,
                center,
                exponent,
            } => Some(Primitive::Power {
                coef: 1.0 / coef,
                center,
                exponent: -exponent,
            }),
            Primitive::ExpRecip { .. } => None,
        }
    }

    /// Density of the image measure under `x -> k x + t`.
    pub fn pushforward(&self, k: f64, t: f64) -> Primitive {
        let ak = k.abs();
        match *self {
            Primitive::Constant(c) => Primitive::Constant(c / ak),
            Primitive::Power {
                coef,
                center,
                exponent,
            } => Primitive::Power {
                coef: if ak == 1.0 { coef } else { coef * ak.powf(-exponent - 1.0) },
                center: k * center + t,
                exponent,
            },
            Primitive::ExpRecip { coef, center, rate } => Primitive::ExpRecip {
                coef,
                center: k * center + t,
                rate: rate * k,
            },
        }
    }

    pub fn describe(&self) -> String {
        match *self {
            Primitive::Constant(c) => format!("const({c})"),
            Primitive::Power {
                coef,
                center,
                exponent,
            } => format!("{coef}*|x-{center}|^{exponent}"),
            Primitive::ExpRecip { coef, center, rate } => {
                format!("{coef}*|{rate}|/(x-{center})^2*exp({rate}/(x-{center}))")
            }
        }
    }
}

/// `coef * (G(u_far) - G(u_near))` for `G` an antiderivative of `u^alpha`,
/// `0 <= u_near < u_far <= inf`.
fn power_side_mass(coef: f64, alpha: f64, u_near: f64, u_far: f64) -> ExtReal {
    if !(u_near < u_far) {
        return ExtReal::ZERO;
    }
    let g = |u: f64| -> ExtReal {
        if alpha == -1.0 {
            if u == 0.0 {
                ExtReal::NegInf
            } else {
                ExtReal::from_f64(u.ln())
            }
        } else {
            let e = alpha + 1.0;
            if u == 0.0 {
                if e > 0.0 {
                    ExtReal::ZERO
                } else {
                    ExtReal::NegInf
                }
            } else if u.is_infinite() {
                if e > 0.0 {
                    ExtReal::PosInf
                } else {
                    ExtReal::ZERO
                }
            } else {
                ExtReal::from_f64(u.powf(e) / e)
            }
        }
    };
    // Small-increment path keeps precision for nearby points away from 0.
    if u_near > 0.0 && u_far.is_finite() && alpha != -1.0 {
        let e = alpha + 1.0;
        let ratio = u_far / u_near;
        let diff = u_near.powf(e) * (ratio.powf(e) - 1.0) / e;
        if diff.is_finite() {
            return ExtReal::Finite(coef * diff);
        }
    }
    (g(u_far) - g(u_near)) * coef
}

/// Antiderivative `-sign(rate) * coef * exp(rate / (x - center))` with one-sided
/// limits at the center and at infinity.
fn exp_recip_antiderivative(coef: f64, center: f64, rate: f64, x: f64, side: Side) -> ExtReal {
    let sgn = rate.signum();
    if x.is_infinite() {
        return ExtReal::Finite(-sgn * coef);
    }
    let u = x - center;
    if u == 0.0 {
        let sigma = if side == Side::Right { 1.0 } else { -1.0 };
        return if rate * sigma > 0.0 {
            if sgn > 0.0 {
                ExtReal::NegInf
            } else {
                ExtReal::PosInf
            }
        } else {
            ExtReal::ZERO
        };
    }
    let e = (rate / u).exp().min(f64::MAX);
    let v = (-sgn * coef * e).clamp(-f64::MAX, f64::MAX);
    ExtReal::Finite(v)
}

/// A density primitive restricted to a support interval.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensitySegment {
    pub support: Interval,
    pub primitive: Primitive,
}

impl DensitySegment {
    pub fn new(support: Interval, primitive: Primitive) -> Result<Self> {
        primitive.validate()?;
        Ok(DensitySegment { support, primitive })
    }

    pub fn constant(support: Interval, c: f64) -> Result<Self> {
        Self::new(support, Primitive::Constant(c))
    }

    pub fn value(&self, x: f64) -> f64 {
        if self.support.contains(x) || self.support.contains_interior(x) {
            self.primitive.value(x)
        } else {
            0.0
        }
    }

    /// Mass of `j` (endpoint flags are irrelevant for densities).
    pub fn mass(&self, j: &Interval) -> ExtReal {
        let p = j.a().max(self.support.a());
        let q = j.b().min(self.support.b());
        if !(p < q) {
            return ExtReal::ZERO;
        }
        self.primitive.integral(p, q)
    }

    pub fn pushforward(&self, k: f64, t: f64) -> Result<DensitySegment> {
        let (a, b) = (k * self.support.a() + t, k * self.support.b() + t);
        let support = if k > 0.0 {
            Interval::new(a, b, self.support.left_closed(), self.support.right_closed())?
        } else {
            Interval::new(b, a, self.support.right_closed(), self.support.left_closed())?
        };
        Ok(DensitySegment {
            support,
            primitive: self.primitive.pushforward(k, t),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: ExtReal, b: f64) -> bool {
        (a.finite().unwrap() - b).abs() < 1e-12 * b.abs().max(1.0)
    }

    #[test]
    fn power_masses() {
        let inv_sq = Primitive::Power { coef: 1.0, center: 0.0, exponent: -2.0 };
        // int_1^2 x^-2 = 1/2
        assert!(close(inv_sq.integral(1.0, 2.0), 0.5));
        assert_eq!(inv_sq.integral(0.0, 1.0), ExtReal::PosInf);
        assert!(close(inv_sq.integral(1.0, f64::INFINITY), 1.0));
        assert_eq!(inv_sq.integral(-1.0, 1.0), ExtReal::PosInf);
        let sqrt = Primitive::Power { coef: 1.0, center: 0.0, exponent: 0.5 };
        assert!(close(sqrt.integral(-1.0, 1.0), 4.0 / 3.0));
        let recip = Primitive::Power { coef: 1.0, center: 0.0, exponent: -1.0 };
        assert!(close(recip.integral(1.0, std::f64::consts::E), 1.0));
        assert_eq!(recip.integral(0.0, 1.0), ExtReal::PosInf);
    }

    #[test]
    fn exp_recip_masses() {
        // d/dx(-exp(1/x)) on (1, 2): exp(1) - exp(1/2)
        let p = Primitive::ExpRecip { coef: 1.0, center: 0.0, rate: 1.0 };
        assert!(close(p.integral(1.0, 2.0), 1f64.exp() - 0.5f64.exp()));
        assert_eq!(p.integral(0.0, 1.0), ExtReal::PosInf);
        assert!(close(p.integral(1.0, f64::INFINITY), 1f64.exp() - 1.0));
        // the left side of the center carries finite mass
        assert!(close(p.integral(f64::NEG_INFINITY, 0.0), 1.0));
    }

    #[test]
    fn pushforward_preserves_mass() {
        let seg = DensitySegment::new(
            Interval::open(1.0, 3.0).unwrap(),
            Primitive::Power { coef: 2.0, center: 0.0, exponent: 1.5 },
        )
        .unwrap();
        let all = Interval::real_line();
        for (k, t) in [(2.0, 1.0), (-0.5, 3.0), (1.0, 0.0)] {
            let img = seg.pushforward(k, t).unwrap();
            let m0 = seg.mass(&all).finite().unwrap();
            let m1 = img.mass(&all).finite().unwrap();
            assert!((m0 - m1).abs() < 1e-12 * m0, "k={k}: {m0} vs {m1}");
        }
        let e = DensitySegment::new(
            Interval::open(0.5, 2.0).unwrap(),
            Primitive::ExpRecip { coef: 1.0, center: 0.0, rate: 1.0 },
        )
        .unwrap();
        let img = e.pushforward(-3.0, 1.0).unwrap();
        let m0 = e.mass(&all).finite().unwrap();
        let m1 = img.mass(&all).finite().unwrap();
        assert!((m0 - m1).abs() < 1e-12 * m0);
    }
}
