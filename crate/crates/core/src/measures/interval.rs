use std::fmt;

use crate::error::{Error, Result};

/// An interval `<a, b>` of the extended real line with independent closedness
/// flags. Infinite endpoints are never closed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
    left_closed: bool,
    right_closed: bool,
}

impl Interval {
    pub fn new(a: f64, b: f64, left_closed: bool, right_closed: bool) -> Result<Self> {
        if a.is_nan() || b.is_nan() {
            return Err(Error::InvalidInterval("NaN endpoint".into()));
        }
        if !(a < b) {
            return Err(Error::InvalidInterval(format!("need a < b, got a={a}, b={b}")));
        }
        if (left_closed && a.is_infinite()) || (right_closed && b.is_infinite()) {
            return Err(Error::InvalidInterval(
                "an infinite endpoint cannot be closed".into(),
            ));
        }
        Ok(Interval {
            a,
            b,
            left_closed,
            right_closed,
        })
    }

    pub fn open(a: f64, b: f64) -> Result<Self> {
        Self::new(a, b, false, false)
    }

    pub fn closed(a: f64, b: f64) -> Result<Self> {
        Self::new(a, b, true, true)
    }

    /// Closed at every finite endpoint, open at infinite ones.
    pub fn span(a: f64, b: f64) -> Result<Self> {
        Self::new(a, b, a.is_finite(), b.is_finite())
    }

    pub fn real_line() -> Self {
        Interval {
            a: f64::NEG_INFINITY,
            b: f64::INFINITY,
            left_closed: false,
            right_closed: false,
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn left_closed(&self) -> bool {
        self.left_closed
    }

    pub fn right_closed(&self) -> bool {
        self.right_closed
    }

    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    pub fn is_bounded(&self) -> bool {
        self.a.is_finite() && self.b.is_finite()
    }

    pub fn is_open(&self) -> bool {
        !self.left_closed && !self.right_closed
    }

    pub fn is_real_line(&self) -> bool {
        self.a == f64::NEG_INFINITY && self.b == f64::INFINITY
    }

    pub fn contains(&self, x: f64) -> bool {
        (x > self.a || (self.left_closed && x == self.a))
            && (x < self.b || (self.right_closed && x == self.b))
    }

    pub fn contains_interior(&self, x: f64) -> bool {
        x > self.a && x < self.b
    }

    /// Membership in the closure within the extended line, so `+inf` is in the
    /// closure of `(0, inf)`.
    pub fn closure_contains(&self, x: f64) -> bool {
        x >= self.a && x <= self.b
    }

    pub fn interior(&self) -> Interval {
        Interval {
            left_closed: false,
            right_closed: false,
            ..*self
        }
    }

    pub fn with_flags(&self, left_closed: bool, right_closed: bool) -> Result<Interval> {
        Interval::new(self.a, self.b, left_closed, right_closed)
    }

    /// Intersection; `None` when empty or a single point.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let (a, lc) = if self.a > other.a {
            (self.a, self.left_closed)
        } else if other.a > self.a {
            (other.a, other.left_closed)
        } else {
            (self.a, self.left_closed && other.left_closed)
        };
        let (b, rc) = if self.b < other.b {
            (self.b, self.right_closed)
        } else if other.b < self.b {
            (other.b, other.right_closed)
        } else {
            (self.b, self.right_closed && other.right_closed)
        };
        if a < b {
            Some(Interval {
                a,
                b,
                left_closed: lc,
                right_closed: rc,
            })
        } else {
            None
        }
    }

    pub fn is_subset_of(&self, other: &Interval) -> bool {
        let left_ok = self.a > other.a || (self.a == other.a && (!self.left_closed || other.left_closed));
        let right_ok =
            self.b < other.b || (self.b == other.b && (!self.right_closed || other.right_closed));
        left_ok && right_ok
    }

    /// True when the two intervals share a point.
    pub fn meets(&self, other: &Interval) -> bool {
        if self.intersect(other).is_some() {
            return true;
        }
        (self.b == other.a && self.right_closed && other.left_closed)
            || (other.b == self.a && other.right_closed && self.left_closed)
    }

    /// The normalization point of a scale function on this interval: the
    /// midpoint for bounded intervals, one unit inside a single finite
    /// endpoint, and `0` on the whole line.
    pub fn default_base_point(&self) -> f64 {
        match (self.a.is_finite(), self.b.is_finite()) {
            (true, true) => 0.5 * (self.a + self.b),
            (true, false) => self.a + 1.0,
            (false, true) => self.b - 1.0,
            (false, false) => 0.0,
        }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = if self.left_closed { '[' } else { '(' };
        let r = if self.right_closed { ']' } else { ')' };
        write!(f, "{l}{}, {}{r}", fmt_point(self.a), fmt_point(self.b))
    }
}

pub(crate) fn fmt_point(x: f64) -> String {
    if x == f64::INFINITY {
        "inf".into()
    } else if x == f64::NEG_INFINITY {
        "-inf".into()
    } else {
        format!("{x}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn invariants_enforced() {
        assert!(Interval::new(1.0, 1.0, false, false).is_err());
        assert!(Interval::new(f64::NEG_INFINITY, 0.0, true, false).is_err());
        assert!(Interval::span(f64::NEG_INFINITY, 0.0).unwrap().right_closed());
    }

    #[test]
    fn intersection_flags() {
        let a = Interval::new(0.0, 1.0, true, false).unwrap();
        let b = Interval::new(0.0, 2.0, false, true).unwrap();
        let c = a.intersect(&b).unwrap();
        assert_eq!(c, Interval::open(0.0, 1.0).unwrap());
        let d = Interval::closed(1.0, 2.0).unwrap();
        assert!(a.intersect(&d).is_none());
        assert!(!a.meets(&d));
        assert!(Interval::closed(0.0, 1.0).unwrap().meets(&d));
    }

    #[test]
    fn base_point_formula() {
        assert_eq!(Interval::open(0.0, 1.0).unwrap().default_base_point(), 0.5);
        assert_eq!(Interval::open(0.0, f64::INFINITY).unwrap().default_base_point(), 1.0);
        assert_eq!(Interval::open(f64::NEG_INFINITY, 0.0).unwrap().default_base_point(), -1.0);
        assert_eq!(Interval::real_line().default_base_point(), 0.0);
    }

    #[test]
    fn subset() {
        let i = Interval::new(0.0, f64::INFINITY, true, false).unwrap();
        assert!(Interval::open(0.0, 1.0).unwrap().is_subset_of(&i));
        assert!(!Interval::closed(-1.0, 1.0).unwrap().is_subset_of(&i));
        assert!(!i.is_subset_of(&Interval::open(0.0, f64::INFINITY).unwrap()));
    }
}
