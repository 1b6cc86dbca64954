//! Whether compactly supported smooth functions belong to the form domain.

use crate::error::{Error, Result};
use crate::extended::ExtReal;
use crate::measures::measure::midpoint;
use crate::measures::Interval;

use crate::dirichlet::DiffusionSpec;

/// Contribution of one effective interval (or one gap family) to the
/// containment test.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothItem {
    pub subject: String,
    /// Lebesgue measure of the part of the interval where the ac scale
    /// density vanishes (must be `0`).
    pub null_length: f64,
    /// `int 1/g dx` over the interval inside the window.
    pub reciprocal: ExtReal,
    pub exact: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmoothVerdict {
    pub contained: bool,
    pub window: Interval,
    pub total: ExtReal,
    pub items: Vec<SmoothItem>,
}

impl SmoothVerdict {
    pub fn reasons(&self) -> Vec<String> {
        let mut out = Vec::new();
        for it in &self.items {
            if it.null_length > 0.0 {
                out.push(format!("{}: scale density vanishes on a set of length {}", it.subject, it.null_length));
            }
            if !it.reciprocal.is_finite() {
                out.push(format!("{}: integral of 1/g over the window diverges", it.subject));
            }
        }
        out
    }
}

/// Shrinks `window` into the state space. At an excluded finite endpoint the
/// window stops halfway to the nearest interior breakpoint: any compact
/// sub-interval of an open state space may serve as the window, and between
/// the endpoint and that breakpoint the data have a single closed form.
pub fn clip_window(spec: &DiffusionSpec, window: &Interval) -> Result<Interval> {
    let state = spec.state();
    if !window.is_bounded() {
        return Err(Error::Precondition(format!("window {window} must be bounded")));
    }
    let inner: Vec<f64> = spec
        .breakpoints()
        .into_iter()
        .filter(|&x| state.contains_interior(x))
        .collect();
    let mid = midpoint(state.a(), state.b());
    let mut lo = window.a().max(state.a());
    let mut hi = window.b().min(state.b());
    if state.a().is_finite() && !state.left_closed() && lo <= state.a() {
        let p = inner.first().copied().unwrap_or(mid);
        lo = 0.5 * (state.a() + p);
    }
    if state.b().is_finite() && !state.right_closed() && hi >= state.b() {
        let q = inner.last().copied().unwrap_or(mid);
        hi = 0.5 * (q + state.b());
    }
    if !(lo < hi) {
        return Err(Error::Precondition(format!("window {window} misses the state space {state}")));
    }
    Interval::closed(lo, hi)
}

/// `C_c^inf` inclusion: every ac scale density is positive almost everywhere
/// on its interval and `sum_n int_{I_n ∩ W} 1/g_n dx` is finite.
pub fn contains_smooth(spec: &DiffusionSpec, window: &Interval) -> Result<SmoothVerdict> {
    let w = clip_window(spec, window)?;
    let mut items = Vec::new();
    let mut total = ExtReal::ZERO;
    for (n, s) in spec.explicit_scales().iter().enumerate() {
        let j = s.domain();
        let (ac, _) = s.ds().lebesgue_decompose();
        let null_length = ac.null_density_length(j.a(), j.b());
        let (p, q) = (j.a().max(w.a()), j.b().min(w.b()));
        let (reciprocal, exact) = if p < q {
            let r = ac.reciprocal_integral(p, q)?;
            (r.value, r.exact)
        } else {
            (ExtReal::ZERO, true)
        };
        total = total + reciprocal;
        items.push(SmoothItem {
            subject: format!("explicit.{n}"),
            null_length,
            reciprocal,
            exact,
        });
    }
    for (f, fam) in spec.families().iter().enumerate() {
        let reciprocal = fam.set.gap_sum(w.a(), w.b(), 1.0 / fam.coef, -fam.exponent);
        total = total + reciprocal;
        items.push(SmoothItem {
            subject: format!("family.{f}"),
            null_length: 0.0,
            reciprocal,
            exact: true,
        });
    }
    let contained = items.iter().all(|it| it.null_length == 0.0) && total.is_finite();
    Ok(SmoothVerdict {
        contained,
        window: w,
        total,
        items,
    })
}
