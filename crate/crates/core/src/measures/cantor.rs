//! Cantor-type sets built by iterated middle removal, their uniform measures,
//! and sums over their gaps.

use crate::error::{Error, Result};
use crate::extended::ExtReal;

/// Recursion cap for block descent; blocks below this depth are treated as
/// uniformly filled (the error is bounded by the block's own contribution).
const MAX_DESCENT: u32 = 1100;
/// Levels summed explicitly before the geometric tail bound takes over.
const MAX_LEVELS: usize = 20_000;

/// How each block is split into two children.
#[derive(Debug, Clone, PartialEq)]
pub enum CantorKind {
    /// Every block keeps two end pieces of relative length `keep_ratio` each.
    Standard { keep_ratio: f64 },
    /// Level `k` removes the middle fraction `r_k`: `removed[k]` for listed
    /// levels, then the last listed value shrunk geometrically by
    /// `tail_ratio` per further level. The limit set has positive length.
    Fat { removed: Vec<f64>, tail_ratio: f64 },
}

/// A Cantor-type subset of the compact interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct CantorSet {
    lo: f64,
    hi: f64,
    kind: CantorKind,
    /// `tail_products[k] = prod_{j >= k} (1 - r_j)`, truncated where the tail
    /// becomes geometric.
    tail_products: Vec<f64>,
}

impl CantorSet {
    pub fn new(lo: f64, hi: f64, kind: CantorKind) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidMeasure(format!(
                "Cantor support [{lo}, {hi}] must be a finite non-degenerate interval"
            )));
        }
        match &kind {
            CantorKind::Standard { keep_ratio } => {
                if !(*keep_ratio > 0.0 && *keep_ratio < 0.5) {
                    return Err(Error::InvalidMeasure(format!(
                        "keep ratio {keep_ratio} outside (0, 1/2)"
                    )));
                }
            }
            CantorKind::Fat { removed, tail_ratio } => {
                if removed.is_empty() || removed.iter().any(|r| !(*r > 0.0 && *r < 1.0)) {
                    return Err(Error::InvalidMeasure(
                        "fat Cantor removed fractions must be non-empty and lie in (0, 1)".into(),
                    ));
                }
                if !(*tail_ratio > 0.0 && *tail_ratio < 1.0) {
                    return Err(Error::InvalidMeasure(format!(
                        "fat Cantor tail ratio {tail_ratio} outside (0, 1)"
                    )));
                }
            }
        }
        let mut set = CantorSet {
            lo,
            hi,
            kind,
            tail_products: Vec::new(),
        };
        set.tail_products = set.compute_tail_products();
        Ok(set)
    }

    pub fn standard(lo: f64, hi: f64) -> Result<Self> {
        Self::new(lo, hi, CantorKind::Standard { keep_ratio: 1.0 / 3.0 })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn kind(&self) -> &CantorKind {
        &self.kind
    }

    pub fn is_fat(&self) -> bool {
        matches!(self.kind, CantorKind::Fat { .. })
    }

    /// Fraction removed from the middle of every block at level `k`.
    pub fn removed_fraction(&self, k: usize) -> f64 {
        match &self.kind {
            CantorKind::Standard { keep_ratio } => 1.0 - 2.0 * keep_ratio,
            CantorKind::Fat { removed, tail_ratio } => {
                if k < removed.len() {
                    removed[k]
                } else {
                    let extra = (k + 1 - removed.len()) as i32;
                    removed[removed.len() - 1] * tail_ratio.powi(extra)
                }
            }
        }
    }

    fn compute_tail_products(&self) -> Vec<f64> {
        match &self.kind {
            CantorKind::Standard { .. } => Vec::new(),
            CantorKind::Fat { .. } => {
                // Find a level beyond which r_k < 1e-18, so the tail product is 1.
                let mut n = 0;
                while self.removed_fraction(n) > 1e-18 && n < MAX_LEVELS {
                    n += 1;
                }
                let mut out = vec![1.0; n + 1];
                for k in (0..n).rev() {
                    out[k] = out[k + 1] * (1.0 - self.removed_fraction(k));
                }
                out
            }
        }
    }

    /// `prod_{j >= k} (1 - r_j)`: the surviving length fraction of a level-`k`
    /// block. Zero for the standard construction.
    pub fn surviving_fraction(&self, k: usize) -> f64 {
        match &self.kind {
            CantorKind::Standard { .. } => 0.0,
            CantorKind::Fat { .. } => self.tail_products.get(k).copied().unwrap_or(1.0),
        }
    }

    /// Lebesgue measure of the set.
    pub fn lebesgue_measure(&self) -> f64 {
        (self.hi - self.lo) * self.surviving_fraction(0)
    }

    /// Length of each child relative to its parent at level `k`.
    fn child_ratio(&self, k: usize) -> f64 {
        (1.0 - self.removed_fraction(k)) / 2.0
    }

    /// Whether `x` lies in the set (decided to `depth` levels; points in deeper
    /// gaps are reported as members).
    pub fn contains(&self, x: f64, depth: u32) -> bool {
        self.gap_containing(x, depth).is_none() && x >= self.lo && x <= self.hi
    }

    /// The removed open gap of generation `< depth` containing `x`, if any.
    /// Gaps narrower than the floating-point resolution near the set are not
    /// resolved, so points of the set are not misreported through rounding.
    pub fn gap_containing(&self, x: f64, depth: u32) -> Option<(f64, f64)> {
        if !(x > self.lo && x < self.hi) {
            return None;
        }
        let resolution = 1e3 * f64::EPSILON * self.lo.abs().max(self.hi.abs()).max(self.hi - self.lo);
        let (mut u, mut len) = (self.lo, self.hi - self.lo);
        for k in 0..depth as usize {
            let child = len * self.child_ratio(k);
            let (g0, g1) = (u + child, u + len - child);
            if g1 - g0 < resolution {
                break;
            }
            if x > g0 && x < g1 {
                return Some((g0, g1));
            }
            if x >= g1 {
                u = g1;
            }
            len = child;
            if len == 0.0 {
                break;
            }
        }
        None
    }

    /// All gaps of generation `< depth`, sorted left to right.
    pub fn gaps(&self, depth: u32) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        self.collect_gaps(self.lo, self.hi - self.lo, 0, depth as usize, &mut out);
        out
    }

    fn collect_gaps(&self, u: f64, len: f64, k: usize, depth: usize, out: &mut Vec<(f64, f64)>) {
        if k >= depth {
            return;
        }
        let child = len * self.child_ratio(k);
        let (g0, g1) = (u + child, u + len - child);
        self.collect_gaps(u, child, k + 1, depth, out);
        out.push((g0, g1));
        self.collect_gaps(g1, child, k + 1, depth, out);
    }

    /// Gap generation (`0` for the central gap) of a gap returned by [`gaps`](Self::gaps).
    pub fn gap_generation(&self, gap: (f64, f64)) -> Option<u32> {
        let mid = 0.5 * (gap.0 + gap.1);
        let (mut u, mut len) = (self.lo, self.hi - self.lo);
        for k in 0..MAX_DESCENT as usize {
            let child = len * self.child_ratio(k);
            let (g0, g1) = (u + child, u + len - child);
            if mid > g0 && mid < g1 {
                return Some(k as u32);
            }
            if mid >= g1 {
                u = g1;
            }
            len = child;
            if len == 0.0 {
                break;
            }
        }
        None
    }

    /// `|K ∩ [p, q]|`.
    pub fn lebesgue_in(&self, p: f64, q: f64) -> f64 {
        if self.surviving_fraction(0) == 0.0 {
            return 0.0;
        }
        self.lebesgue_block(self.lo, self.hi - self.lo, 0, p, q)
    }

    fn lebesgue_block(&self, u: f64, len: f64, k: usize, p: f64, q: f64) -> f64 {
        let v = u + len;
        if q <= u || p >= v || len == 0.0 {
            return 0.0;
        }
        if p <= u && v <= q {
            return len * self.surviving_fraction(k);
        }
        if k as u32 >= MAX_DESCENT {
            return (q.min(v) - p.max(u)) * self.surviving_fraction(k);
        }
        let child = len * self.child_ratio(k);
        self.lebesgue_block(u, child, k + 1, p, q) + self.lebesgue_block(v - child, child, k + 1, p, q)
    }

    /// Normalized uniform distribution function of the natural measure on `K`:
    /// the self-similar measure splitting mass equally between children for the
    /// standard construction, normalized Lebesgue measure on `K` for the fat one.
    /// Standard sets are resolved to `depth` levels and linearly interpolated
    /// inside the last block, so the error is at most `2^-depth`.
    pub fn uniform_cdf(&self, x: f64, depth: u32) -> f64 {
        if x <= self.lo {
            return 0.0;
        }
        if x >= self.hi {
            return 1.0;
        }
        match self.kind {
            CantorKind::Fat { .. } => self.lebesgue_in(self.lo, x) / self.lebesgue_measure(),
            CantorKind::Standard { keep_ratio } => {
                // Work in the relative coordinate and rescale by 1/keep_ratio at
                // each level, which keeps full precision for points of the set.
                let inv = 1.0 / keep_ratio;
                let mut t = (x - self.lo) / (self.hi - self.lo);
                let (mut acc, mut weight) = (0.0, 1.0);
                for _ in 0..depth {
                    weight *= 0.5;
                    if t <= keep_ratio {
                        t *= inv;
                    } else if t < 1.0 - keep_ratio {
                        return acc + weight;
                    } else {
                        acc += weight;
                        t = t * inv - (inv - 1.0);
                    }
                }
                acc + weight * t.clamp(0.0, 1.0)
            }
        }
    }

    /// `sum over all gaps g of c * |g|^beta * |g ∩ [p, q]|`.
    pub fn gap_sum(&self, p: f64, q: f64, c: f64, beta: f64) -> ExtReal {
        if !(p < q) || c == 0.0 {
            return ExtReal::ZERO;
        }
        let totals = GapTotals::new(self, c, beta);
        self.gap_sum_block(self.lo, self.hi - self.lo, 0, p, q, c, beta, &totals)
    }

    #[allow(clippy::too_many_arguments)]
    fn gap_sum_block(
        &self,
        u: f64,
        len: f64,
        k: usize,
        p: f64,
        q: f64,
        c: f64,
        beta: f64,
        totals: &GapTotals,
    ) -> ExtReal {
        let v = u + len;
        if q <= u || p >= v || len == 0.0 {
            return ExtReal::ZERO;
        }
        if p <= u && v <= q {
            return totals.block_total(self, k, len);
        }
        if k as u32 >= MAX_DESCENT {
            let frac = (q.min(v) - p.max(u)) / len;
            return totals.block_total(self, k, len) * frac;
        }
        let child = len * self.child_ratio(k);
        let (g0, g1) = (u + child, v - child);
        let overlap = (q.min(g1) - p.max(g0)).max(0.0);
        let mid = if overlap > 0.0 {
            ExtReal::from_f64(c * (g1 - g0).powf(beta) * overlap)
        } else {
            ExtReal::ZERO
        };
        mid + self.gap_sum_block(u, child, k + 1, p, q, c, beta, totals)
            + self.gap_sum_block(g1, child, k + 1, p, q, c, beta, totals)
    }

    /// Image under `x -> k x + t`; the construction is mirror symmetric so a
    /// reflection yields the same kind of set.
    pub fn pushforward(&self, k: f64, t: f64) -> Result<CantorSet> {
        let (a, b) = (k * self.lo + t, k * self.hi + t);
        CantorSet::new(a.min(b), a.max(b), self.kind.clone())
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            CantorKind::Standard { keep_ratio } => {
                format!("cantor[{}, {}] keep={}", self.lo, self.hi, keep_ratio)
            }
            CantorKind::Fat { removed, tail_ratio } => format!(
                "fat-cantor[{}, {}] removed={:?} tail={}",
                self.lo, self.hi, removed, tail_ratio
            ),
        }
    }
}

/// Closed-form or summed totals `T_k(L)` of the gap sum over a whole block.
struct GapTotals {
    c: f64,
    gamma: f64,
    /// Standard: `T(L) = scale * L^gamma`. Fat: `T_k(L) = level_sums[k] * L^gamma`
    /// (`None` when divergent).
    standard_scale: Option<ExtReal>,
    level_sums: Vec<ExtReal>,
}

impl GapTotals {
    fn new(set: &CantorSet, c: f64, beta: f64) -> Self {
        let gamma = 1.0 + beta;
        match set.kind {
            CantorKind::Standard { keep_ratio } => {
                let r = 1.0 - 2.0 * keep_ratio;
                let denom = 1.0 - 2.0 * keep_ratio.powf(gamma);
                let scale = if denom > 0.0 {
                    ExtReal::from_f64(c * r.powf(gamma) / denom)
                } else {
                    ExtReal::PosInf
                };
                GapTotals {
                    c,
                    gamma,
                    standard_scale: Some(scale),
                    level_sums: Vec::new(),
                }
            }
            CantorKind::Fat { tail_ratio, .. } => {
                let asymptotic = 2f64.powf(1.0 - gamma) * tail_ratio.powf(gamma);
                let n = set.tail_products.len().max(64);
                // S_k = sum_{j >= k} 2^{j-k} (r_j * l_j)^gamma where l_j is the block
                // length at level j relative to a unit block at level k.
                let mut sums = vec![ExtReal::PosInf; n + 1];
                if asymptotic < 1.0 {
                    // Beyond level n the ratio is within rounding of `asymptotic`,
                    // so the remainder is bounded by a geometric series.
                    let rn = set.removed_fraction(n);
                    let tail = (rn.powf(gamma)) / (1.0 - asymptotic);
                    let mut s = tail;
                    sums[n] = ExtReal::from_f64(s);
                    for k in (0..n).rev() {
                        let cr = set.child_ratio(k);
                        s = set.removed_fraction(k).powf(gamma) + 2.0 * cr.powf(gamma) * s;
                        sums[k] = if s.is_finite() {
                            ExtReal::Finite(s)
                        } else {
                            ExtReal::PosInf
                        };
                    }
                }
                GapTotals {
                    c,
                    gamma,
                    standard_scale: None,
                    level_sums: sums,
                }
            }
        }
    }

    fn block_total(&self, set: &CantorSet, k: usize, len: f64) -> ExtReal {
        let lg = len.powf(self.gamma);
        match self.standard_scale {
            Some(scale) => scale * lg,
            None => {
                let s = if k < self.level_sums.len() {
                    self.level_sums[k]
                } else {
                    // deep levels: r_k tiny, sum dominated by the first term
                    let last = *self.level_sums.last().unwrap();
                    if last.is_finite() {
                        ExtReal::from_f64(set.removed_fraction(k).powf(self.gamma))
                    } else {
                        last
                    }
                };
                s * (self.c * lg)
            }
        }
    }
}

/// Uniform measure of total mass `total_mass` on a Cantor set; see
/// [`CantorSet::uniform_cdf`].
#[derive(Debug, Clone, PartialEq)]
pub struct CantorComponent {
    pub set: CantorSet,
    pub total_mass: f64,
    pub eval_depth: u32,
}

pub const DEFAULT_EVAL_DEPTH: u32 = 52;

impl CantorComponent {
    pub fn new(set: CantorSet, total_mass: f64) -> Result<Self> {
        if !(total_mass.is_finite() && total_mass > 0.0) {
            return Err(Error::InvalidMeasure(format!(
                "Cantor component mass {total_mass} must be positive and finite"
            )));
        }
        Ok(CantorComponent {
            set,
            total_mass,
            eval_depth: DEFAULT_EVAL_DEPTH,
        })
    }

    pub fn with_depth(mut self, depth: u32) -> Self {
        self.eval_depth = depth.max(1);
        self
    }

    /// Distribution function `x -> mu([lo, x])`.
    pub fn cdf(&self, x: f64) -> f64 {
        self.total_mass * self.set.uniform_cdf(x, self.eval_depth)
    }

    pub fn mass_between(&self, p: f64, q: f64) -> f64 {
        if !(p < q) {
            return 0.0;
        }
        (self.cdf(q) - self.cdf(p)).max(0.0)
    }

    /// Singular iff the carrying set is Lebesgue-null.
    pub fn is_singular(&self) -> bool {
        !self.set.is_fat()
    }

    pub fn pushforward(&self, k: f64, t: f64) -> Result<CantorComponent> {
        Ok(CantorComponent {
            set: self.set.pushforward(k, t)?,
            total_mass: self.total_mass,
            eval_depth: self.eval_depth,
        })
    }
}

/// Copies of one Cantor component shrinking toward an accumulation point:
/// copy `p` is the image of `first` under `x -> center + ratio^p (x - center)`
/// with mass `first.total_mass * mass_ratio^p`. `count = None` means infinitely
/// many copies.
#[derive(Debug, Clone, PartialEq)]
pub struct CantorCascade {
    pub first: CantorComponent,
    pub center: f64,
    pub ratio: f64,
    pub mass_ratio: f64,
    pub count: Option<usize>,
}

impl CantorCascade {
    pub fn new(
        first: CantorComponent,
        center: f64,
        ratio: f64,
        mass_ratio: f64,
        count: Option<usize>,
    ) -> Result<Self> {
        let (lo, hi) = (first.set.lo(), first.set.hi());
        if !(center <= lo || center >= hi) {
            return Err(Error::InvalidMeasure(
                "cascade accumulation point must lie outside the first copy".into(),
            ));
        }
        if !(ratio > 0.0 && ratio < 1.0) || !(mass_ratio > 0.0 && mass_ratio.is_finite()) {
            return Err(Error::InvalidMeasure(format!(
                "cascade ratio {ratio} must be in (0,1) and mass ratio {mass_ratio} positive"
            )));
        }
        if count == Some(0) {
            return Err(Error::InvalidMeasure("cascade needs at least one copy".into()));
        }
        // Copies must not overlap: the second copy has to fit between the
        // center and the first copy.
        let d_near = (lo - center).abs().min((hi - center).abs());
        let d_far = (lo - center).abs().max((hi - center).abs());
        if ratio * d_far > d_near + 1e-15 * d_far {
            return Err(Error::InvalidMeasure("cascade copies overlap".into()));
        }
        Ok(CantorCascade {
            first,
            center,
            ratio,
            mass_ratio,
            count,
        })
    }

    /// `true` when copies lie to the right of the accumulation point.
    pub fn to_the_right(&self) -> bool {
        self.first.set.lo() >= self.center
    }

    pub fn copy(&self, p: usize) -> Result<CantorComponent> {
        let k = self.ratio.powi(p as i32);
        let mut c = self.first.pushforward(k, self.center * (1.0 - k))?;
        c.total_mass = self.first.total_mass * self.mass_ratio.powi(p as i32);
        Ok(c)
    }

    pub fn copy_support(&self, p: usize) -> (f64, f64) {
        let k = self.ratio.powi(p as i32);
        let a = self.center + k * (self.first.set.lo() - self.center);
        let b = self.center + k * (self.first.set.hi() - self.center);
        (a.min(b), a.max(b))
    }

    /// Mass of the copies from index `p` on.
    fn tail_mass(&self, p: usize) -> ExtReal {
        let m0 = self.first.total_mass * self.mass_ratio.powi(p as i32);
        match self.count {
            Some(n) => {
                if p >= n {
                    ExtReal::ZERO
                } else {
                    let k = (n - p) as i32;
                    if self.mass_ratio == 1.0 {
                        ExtReal::from_f64(m0 * k as f64)
                    } else {
                        ExtReal::from_f64(m0 * (1.0 - self.mass_ratio.powi(k)) / (1.0 - self.mass_ratio))
                    }
                }
            }
            None => {
                if self.mass_ratio >= 1.0 {
                    ExtReal::PosInf
                } else {
                    ExtReal::from_f64(m0 / (1.0 - self.mass_ratio))
                }
            }
        }
    }

    pub fn total_mass(&self) -> ExtReal {
        self.tail_mass(0)
    }

    /// Mass of `[p, q]`.
    pub fn mass_between(&self, p: f64, q: f64) -> ExtReal {
        if !(p < q) {
            return ExtReal::ZERO;
        }
        let right = self.to_the_right();
        let limit = self.count.unwrap_or(usize::MAX);
        let mut acc = ExtReal::ZERO;
        let mut idx = 0usize;
        while idx < limit {
            let (a, b) = self.copy_support(idx);
            if b - a == 0.0 {
                break;
            }
            if p <= a && b <= q {
                // All later copies sit between this one and the center; they are
                // inside [p, q] as soon as the center side is covered.
                let covers_rest = if right { p <= self.center } else { q >= self.center };
                if covers_rest {
                    return acc + self.tail_mass(idx);
                }
            }
            let beyond = if right { b <= p } else { a >= q };
            if beyond {
                break;
            }
            if let Ok(c) = self.copy(idx) {
                acc = acc + ExtReal::from_f64(c.mass_between(p, q));
            }
            idx += 1;
        }
        acc
    }

    /// Finite distribution-function evaluation is not meaningful when the total
    /// mass diverges; callers use [`mass_between`](Self::mass_between).
    pub fn pushforward(&self, k: f64, t: f64) -> Result<CantorCascade> {
        CantorCascade::new(
            self.first.pushforward(k, t)?,
            k * self.center + t,
            self.ratio,
            self.mass_ratio,
            self.count,
        )
    }

    /// Closed hull of all copies together with the accumulation point.
    pub fn hull(&self) -> (f64, f64) {
        let (a, b) = self.copy_support(0);
        (a.min(self.center), b.max(self.center))
    }
}

/// Ac density on the gaps of a Cantor set: `coef * |g|^exponent` on every
/// removed gap `g`, zero on the set itself.
#[derive(Debug, Clone, PartialEq)]
pub struct GapDensity {
    pub set: CantorSet,
    pub coef: f64,
    pub exponent: f64,
}

impl GapDensity {
    pub fn new(set: CantorSet, coef: f64, exponent: f64) -> Result<Self> {
        if !(coef.is_finite() && coef > 0.0 && exponent.is_finite()) {
            return Err(Error::InvalidMeasure(format!(
                "gap density needs positive coefficient, got {coef}"
            )));
        }
        Ok(GapDensity {
            set,
            coef,
            exponent,
        })
    }

    pub fn mass_between(&self, p: f64, q: f64) -> ExtReal {
        self.set.gap_sum(p, q, self.coef, self.exponent)
    }

    /// `int_p^q 1/density` over the gaps.
    pub fn reciprocal_integral(&self, p: f64, q: f64) -> ExtReal {
        self.set.gap_sum(p, q, 1.0 / self.coef, -self.exponent)
    }

    pub fn value(&self, x: f64) -> f64 {
        match self.set.gap_containing(x, MAX_DESCENT) {
            Some((a, b)) => self.coef * (b - a).powf(self.exponent),
            None => 0.0,
        }
    }

    pub fn pushforward(&self, k: f64, t: f64) -> Result<GapDensity> {
        // |g'| = |k| |g| and the density picks up 1/|k|.
        let ak = k.abs();
        GapDensity::new(
            self.set.pushforward(k, t)?,
            self.coef * ak.powf(-self.exponent - 1.0),
            self.exponent,
        )
    }
}
