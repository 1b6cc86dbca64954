//! Scale functions: continuous increasing functions given by a measure `ds`
//! and a base point where they vanish.

use std::fmt;

use crate::error::{Error, Result};
use crate::extended::ExtReal;
use crate::measures::{Interval, MeasureSpec, Primitive};

/// Named closed forms. Each one is stored as its density so evaluation always
/// goes through exact antiderivatives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedForm {
    /// `slope * (x - e)`.
    Linear { slope: f64 },
    /// `log x - log e`.
    Log,
    /// `(x^alpha - e^alpha) / alpha`; `ds = x^(alpha-1) dx`.
    Power { alpha: f64 },
    /// `exp(1/e) - exp(1/x)`.
    NegExpRecip,
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedForm::Linear { slope } if *slope == 1.0 => write!(f, "natural"),
            ClosedForm::Linear { slope } => write!(f, "linear(slope={slope})"),
            ClosedForm::Log => write!(f, "log"),
            ClosedForm::Power { alpha } => write!(f, "power(alpha={alpha})"),
            ClosedForm::NegExpRecip => write!(f, "neg_exp_recip"),
        }
    }
}

/// Verdict for one endpoint under the adaptedness conditions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EndpointCheck {
    Holds,
    Fails,
    /// The endpoint is an open endpoint of the state space; the condition does
    /// not apply there.
    Unconstrained,
}

impl EndpointCheck {
    pub fn ok(self) -> bool {
        self != EndpointCheck::Fails
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Adaptedness {
    pub left: EndpointCheck,
    pub right: EndpointCheck,
    pub left_limit: ExtReal,
    pub right_limit: ExtReal,
}

impl Adaptedness {
    pub fn holds(&self) -> bool {
        self.left.ok() && self.right.ok()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScaleFunction {
    domain: Interval,
    base: f64,
    ds: MeasureSpec,
    closed_form: Option<ClosedForm>,
    strict: bool,
}

pub const DEFAULT_INVERSE_TOL: f64 = 1e-12;

impl ScaleFunction {
    /// Scale function with `ds` given as a measure. Atoms are rejected and the
    /// measure must charge every open sub-interval of the domain.
    pub fn from_measure(domain: Interval, base: Option<f64>, ds: MeasureSpec) -> Result<Self> {
        let s = Self::candidate(domain, base, ds)?;
        if !s.strict {
            return Err(Error::InvalidScale(format!(
                "ds does not charge every open sub-interval of {domain}; the function is not strictly increasing"
            )));
        }
        Ok(s)
    }

    /// Like [`from_measure`](Self::from_measure) but allows a non-strictly
    /// increasing result, reported by [`is_strict`](Self::is_strict).
    pub fn candidate(domain: Interval, base: Option<f64>, ds: MeasureSpec) -> Result<Self> {
        let base = base.unwrap_or_else(|| domain.default_base_point());
        if !domain.contains_interior(base) {
            return Err(Error::InvalidScale(format!("base point {base} not inside {domain}")));
        }
        let ds = MeasureSpec { carrier: domain, ..ds };
        ds.validate()?;
        if ds.has_atoms() {
            return Err(Error::InvalidScale("scale measures cannot have atoms".into()));
        }
        if let Err(why) = ds.is_radon_on(&domain) {
            return Err(Error::InvalidScale(why));
        }
        let strict = ds.is_fully_supported();
        Ok(ScaleFunction {
            domain,
            base,
            ds,
            closed_form: None,
            strict,
        })
    }

    pub fn closed(domain: Interval, form: ClosedForm, base: Option<f64>) -> Result<Self> {
        let needs_positive = !matches!(form, ClosedForm::Linear { .. });
        if needs_positive && domain.a() < 0.0 {
            return Err(Error::InvalidScale(format!("{form} scale needs a domain inside [0, inf), got {domain}")));
        }
        let primitive = match form {
            ClosedForm::Linear { slope } => {
                if !(slope > 0.0 && slope.is_finite()) {
                    return Err(Error::InvalidScale(format!("slope {slope} must be positive")));
                }
                Primitive::Constant(slope)
            }
            ClosedForm::Log => Primitive::Power { coef: 1.0, center: 0.0, exponent: -1.0 },
            ClosedForm::Power { alpha } => {
                if alpha == 0.0 || !alpha.is_finite() {
                    return Err(Error::InvalidScale("power scale needs a nonzero exponent; use log".into()));
                }
                Primitive::Power { coef: 1.0, center: 0.0, exponent: alpha - 1.0 }
            }
            ClosedForm::NegExpRecip => Primitive::ExpRecip { coef: 1.0, center: 0.0, rate: 1.0 },
        };
        let ds = MeasureSpec::zero(domain).with_density(domain, primitive)?;
        let mut s = Self::from_measure(domain, base, ds)?;
        s.closed_form = Some(form);
        Ok(s)
    }

    pub fn natural(domain: Interval) -> Result<Self> {
        Self::closed(domain, ClosedForm::Linear { slope: 1.0 }, None)
    }

    pub fn domain(&self) -> &Interval {
        &self.domain
    }

    pub fn base(&self) -> f64 {
        self.base
    }

    pub fn ds(&self) -> &MeasureSpec {
        &self.ds
    }

    pub fn closed_form(&self) -> Option<ClosedForm> {
        self.closed_form
    }

    /// Strictly increasing (`ds` charges every open sub-interval).
    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// Tags the function with a closed form when `ds` is a constant multiple
    /// of Lebesgue measure.
    pub fn recognize(mut self) -> Self {
        if self.closed_form.is_none() {
            if let Some(c) = self.ds.as_uniform_density() {
                self.closed_form = Some(ClosedForm::Linear { slope: c });
            }
        }
        self
    }

    /// `s(x) = x - e` up to a positive factor of 1.
    pub fn is_natural(&self) -> bool {
        matches!(self.closed_form, Some(ClosedForm::Linear { slope }) if slope == 1.0)
            || self.ds.as_uniform_density() == Some(1.0)
    }

    /// `s(x)`, with the one-sided limit at open endpoints.
    pub fn eval(&self, x: f64) -> Result<ExtReal> {
        if x.is_nan() || x < self.domain.a() || x > self.domain.b() {
            return Err(Error::OutOfDomain {
                x,
                domain: self.domain.to_string(),
            });
        }
        Ok(self.ds.stieltjes(self.base, x))
    }

    pub fn left_limit(&self) -> ExtReal {
        self.ds.stieltjes(self.base, self.domain.a())
    }

    pub fn right_limit(&self) -> ExtReal {
        self.ds.stieltjes(self.base, self.domain.b())
    }

    /// Conditions (A)/(B) inside the state interval: at an endpoint that is
    /// interior to `state` or a closed endpoint of it, the scale limit is
    /// infinite exactly when the endpoint is excluded from the domain.
    pub fn is_adapted(&self, state: &Interval) -> Adaptedness {
        let j = &self.domain;
        let (sa, sb) = (self.left_limit(), self.right_limit());
        let left = if j.a() > state.a() || state.left_closed() {
            if sa.is_neg_inf() == !j.left_closed() {
                EndpointCheck::Holds
            } else {
                EndpointCheck::Fails
            }
        } else {
            EndpointCheck::Unconstrained
        };
        let right = if j.b() < state.b() || state.right_closed() {
            if sb.is_pos_inf() == !j.right_closed() {
                EndpointCheck::Holds
            } else {
                EndpointCheck::Fails
            }
        } else {
            EndpointCheck::Unconstrained
        };
        Adaptedness {
            left,
            right,
            left_limit: sa,
            right_limit: sb,
        }
    }

    /// The function generated by the absolutely continuous part of `ds`, with
    /// the same domain and base point. It may fail to be strictly increasing.
    pub fn ac_part(&self) -> ScaleFunction {
        let (ac, _) = self.ds.lebesgue_decompose();
        let strict = ac.is_fully_supported();
        let same = ac == self.ds;
        ScaleFunction {
            domain: self.domain,
            base: self.base,
            ds: ac,
            closed_form: if same { self.closed_form } else { None },
            strict,
        }
    }

    pub fn is_absolutely_continuous(&self) -> bool {
        self.ds.is_absolutely_continuous()
    }

    /// The point `x` with `s(x) = y`.
    pub fn inverse_eval(&self, y: f64) -> Result<f64> {
        self.inverse_eval_tol(y, DEFAULT_INVERSE_TOL)
    }

    pub fn inverse_eval_tol(&self, y: f64, tol: f64) -> Result<f64> {
        let (lo, hi) = (self.left_limit(), self.right_limit());
        let yy = ExtReal::from_f64(y);
        let range_err = || Error::OutOfRange {
            y,
            range: format!("[{lo}, {hi}]"),
        };
        if y.is_nan() || yy < lo || yy > hi {
            return Err(range_err());
        }
        if yy == lo {
            return if self.domain.a().is_finite() { Ok(self.domain.a()) } else { Err(range_err()) };
        }
        if yy == hi {
            return if self.domain.b().is_finite() { Ok(self.domain.b()) } else { Err(range_err()) };
        }
        if !self.strict {
            return Err(Error::InvalidScale("inverse of a non-strictly increasing function".into()));
        }
        let guess = self.closed_inverse(y);
        if let Some(x) = guess {
            if self.domain.contains_interior(x) {
                let v = self.eval(x)?.to_f64();
                if (v - y).abs() <= 1e-14 * y.abs().max(1.0) {
                    return Ok(x);
                }
            }
        }
        // Bracket, then bisect.
        let (mut a, mut b) = (self.base, self.base);
        let mut step = 1.0;
        let sy = |x: f64| self.ds.stieltjes(self.base, x).to_f64();
        if y > 0.0 {
            while sy(b) < y {
                a = b;
                b = if self.domain.b().is_finite() {
                    0.5 * (b + self.domain.b())
                } else {
                    b + step
                };
                if self.domain.b().is_finite() && self.domain.b() - b < tol {
                    b = self.domain.b();
                    break;
                }
                step *= 2.0;
            }
        } else {
            while sy(a) > y {
                b = a;
                a = if self.domain.a().is_finite() { 0.5 * (a + self.domain.a()) } else { a - step };
                if self.domain.a().is_finite() && a - self.domain.a() < tol {
                    a = self.domain.a();
                    break;
                }
                step *= 2.0;
            }
        }
        for _ in 0..2000 {
            let m = 0.5 * (a + b);
            if b - a <= tol || m <= a || m >= b {
                break;
            }
            if sy(m) < y {
                a = m;
            } else {
                b = m;
            }
        }
        Ok(0.5 * (a + b))
    }

    fn closed_inverse(&self, y: f64) -> Option<f64> {
        let e = self.base;
        let x = match self.closed_form? {
            ClosedForm::Linear { slope } => e + y / slope,
            ClosedForm::Log => e * y.exp(),
            ClosedForm::Power { alpha } => (alpha * y + e.powf(alpha)).powf(1.0 / alpha),
            ClosedForm::NegExpRecip => 1.0 / ((1.0 / e).exp() - y).ln(),
        };
        x.is_finite().then_some(x)
    }

    pub fn describe(&self) -> String {
        match self.closed_form {
            Some(c) => c.to_string(),
            None => "stieltjes".to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pos() -> Interval {
        Interval::open(0.0, f64::INFINITY).unwrap()
    }

    #[test]
    fn closed_form_limits() {
        let log = ScaleFunction::closed(pos(), ClosedForm::Log, None).unwrap();
        assert_eq!(log.eval(0.0).unwrap(), ExtReal::NegInf);
        let b3 = ScaleFunction::closed(pos(), ClosedForm::Power { alpha: -1.0 }, None).unwrap();
        assert!((b3.eval(f64::INFINITY).unwrap().finite().unwrap() - 1.0).abs() < 1e-15);
        let nat = ScaleFunction::closed(Interval::real_line(), ClosedForm::Linear { slope: 1.0 }, None).unwrap();
        assert_eq!(nat.eval(0.3).unwrap(), ExtReal::Finite(0.3));
        assert_eq!(nat.eval(nat.base()).unwrap(), ExtReal::ZERO);
    }

    #[test]
    fn adaptedness() {
        let s = ScaleFunction::closed(pos(), ClosedForm::NegExpRecip, None).unwrap();
        assert!(s.is_adapted(&Interval::real_line()).holds());
        let unit = Interval::closed(0.0, 1.0).unwrap();
        let s = ScaleFunction::natural(Interval::open(0.0, 1.0).unwrap()).unwrap();
        let a = s.is_adapted(&unit);
        assert_eq!((a.left, a.right), (EndpointCheck::Fails, EndpointCheck::Fails));
        let s = ScaleFunction::natural(unit).unwrap();
        assert!(s.is_adapted(&Interval::real_line()).holds());
    }

    #[test]
    fn inverses() {
        let nat = ScaleFunction::natural(Interval::real_line()).unwrap();
        assert_eq!(nat.inverse_eval(0.7).unwrap(), 0.7);
        let log = ScaleFunction::closed(pos(), ClosedForm::Log, None).unwrap();
        assert_eq!(log.inverse_eval(0.0).unwrap(), 1.0);
        let b3 = ScaleFunction::closed(pos(), ClosedForm::Power { alpha: -1.0 }, None).unwrap();
        assert!((b3.inverse_eval(0.5).unwrap() - 2.0).abs() < 1e-12);
        assert!(b3.inverse_eval(1.0).is_err());
    }
}
