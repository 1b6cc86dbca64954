//! Extended real numbers for masses and scale limits that may be infinite.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A point of `[-inf, +inf]`.
///
/// Finite values never hold a NaN or an IEEE infinity; the constructors fold
/// IEEE infinities into the dedicated variants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    NegInf,
    Finite(f64),
    PosInf,
}

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal::Finite(0.0);

    /// Folds `f64` infinities into the infinite variants. Panics on NaN.
    pub fn from_f64(x: f64) -> Self {
        assert!(!x.is_nan(), "NaN cannot be represented as an extended real");
        if x == f64::INFINITY {
            ExtReal::PosInf
        } else if x == f64::NEG_INFINITY {
            ExtReal::NegInf
        } else {
            ExtReal::Finite(x)
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn is_pos_inf(self) -> bool {
        self == ExtReal::PosInf
    }

    pub fn is_neg_inf(self) -> bool {
        self == ExtReal::NegInf
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(v),
            _ => None,
        }
    }

    /// Lossy conversion back to `f64` using IEEE infinities.
    pub fn to_f64(self) -> f64 {
        match self {
            ExtReal::NegInf => f64::NEG_INFINITY,
            ExtReal::Finite(v) => v,
            ExtReal::PosInf => f64::INFINITY,
        }
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// `None` for the indeterminate form `inf - inf`.
    pub fn checked_add(self, rhs: Self) -> Option<Self> {
        use ExtReal::*;
        match (self, rhs) {
            (PosInf, NegInf) | (NegInf, PosInf) => None,
            (PosInf, _) | (_, PosInf) => Some(PosInf),
            (NegInf, _) | (_, NegInf) => Some(NegInf),
            (Finite(a), Finite(b)) => Some(ExtReal::from_f64(a + b)),
        }
    }
}

impl From<f64> for ExtReal {
    fn from(x: f64) -> Self {
        ExtReal::from_f64(x)
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        use ExtReal::*;
        match (self, other) {
            (NegInf, NegInf) | (PosInf, PosInf) => Some(Ordering::Equal),
            (NegInf, _) | (_, PosInf) => Some(Ordering::Less),
            (PosInf, _) | (_, NegInf) => Some(Ordering::Greater),
            (Finite(a), Finite(b)) => a.partial_cmp(b),
        }
    }
}

impl Neg for ExtReal {
    type Output = ExtReal;
    fn neg(self) -> ExtReal {
        match self {
            ExtReal::NegInf => ExtReal::PosInf,
            ExtReal::PosInf => ExtReal::NegInf,
            ExtReal::Finite(v) => ExtReal::Finite(-v),
        }
    }
}

impl Add for ExtReal {
    type Output = ExtReal;
    /// Panics on `inf + (-inf)`; callers only add quantities of known sign.
    fn add(self, rhs: ExtReal) -> ExtReal {
        self.checked_add(rhs)
            .expect("indeterminate extended-real sum inf - inf")
    }
}

impl Sub for ExtReal {
    type Output = ExtReal;
    fn sub(self, rhs: ExtReal) -> ExtReal {
        self + (-rhs)
    }
}

impl Mul<f64> for ExtReal {
    type Output = ExtReal;
    /// `0 * inf = 0` (measure-theoretic convention).
    fn mul(self, k: f64) -> ExtReal {
        if k == 0.0 {
            return ExtReal::ZERO;
        }
        match self {
            ExtReal::Finite(v) => ExtReal::from_f64(v * k),
            inf if k > 0.0 => inf,
            inf => -inf,
        }
    }
}

impl std::iter::Sum for ExtReal {
    fn sum<I: Iterator<Item = ExtReal>>(iter: I) -> ExtReal {
        iter.fold(ExtReal::ZERO, |acc, x| acc + x)
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::NegInf => write!(f, "-inf"),
            ExtReal::PosInf => write!(f, "inf"),
            ExtReal::Finite(v) => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_arithmetic() {
        let one = ExtReal::Finite(1.0);
        assert!(ExtReal::NegInf < one && one < ExtReal::PosInf);
        assert_eq!(one + ExtReal::PosInf, ExtReal::PosInf);
        assert_eq!(ExtReal::PosInf - ExtReal::NegInf, ExtReal::PosInf);
        assert_eq!(ExtReal::PosInf * -2.0, ExtReal::NegInf);
        assert_eq!(ExtReal::PosInf * 0.0, ExtReal::ZERO);
        assert_eq!(ExtReal::from_f64(f64::NEG_INFINITY), ExtReal::NegInf);
        assert!(ExtReal::PosInf.checked_add(ExtReal::NegInf).is_none());
    }
}
