//! Structural validation and boundary classification.

use std::fmt;

use crate::error::Result;
use crate::extended::ExtReal;
use crate::measures::{ranges, Interval};
use crate::scale::EndpointCheck;

use super::{DiffusionSpec, EffectiveInterval, Origin};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    Undecidable,
    /// Informational flag (e.g. whether a Dirichlet condition is active).
    Active,
    Inactive,
    NotApplicable,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Undecidable => "UNDECIDABLE",
            CheckStatus::Active => "ACTIVE",
            CheckStatus::Inactive => "inactive",
            CheckStatus::NotApplicable => "n/a",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub subject: String,
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        !self.checks.iter().any(|c| c.status == CheckStatus::Fail || c.status == CheckStatus::Undecidable)
    }

    pub fn has_failures(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Fail)
    }

    pub fn has_undecidable(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Undecidable)
    }

    pub fn find(&self, subject: &str, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.subject == subject && c.name == name)
    }

    /// One `subject name STATUS detail` line per check, preceded by the verdict.
    pub fn to_text(&self) -> String {
        let mut out = format!("valid {}\n", self.is_valid());
        for c in &self.checks {
            out.push_str(&format!("{} {} {}", c.subject, c.name, c.status));
            if !c.detail.is_empty() {
                out.push(' ');
                out.push_str(&c.detail);
            }
            out.push('\n');
        }
        out
    }

    fn push(&mut self, subject: &str, name: &str, status: CheckStatus, detail: String) {
        self.checks.push(Check {
            subject: subject.to_string(),
            name: name.to_string(),
            status,
            detail,
        });
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryKind {
    /// Endpoint belongs to the effective interval (finite scale limit).
    Reflecting,
    /// Excluded endpoint where a Dirichlet condition is imposed.
    Absorbing,
    /// Excluded endpoint at infinite scale distance.
    Unreachable,
    /// Excluded endpoint at finite scale distance with no boundary condition;
    /// for valid systems this is an open end of the state space near which the
    /// speed measure has infinite mass.
    TrapAdjacent,
}

impl fmt::Display for BoundaryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BoundaryKind::Reflecting => "reflecting",
            BoundaryKind::Absorbing => "absorbing",
            BoundaryKind::Unreachable => "unreachable",
            BoundaryKind::TrapAdjacent => "trap-adjacent",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryVerdict {
    pub endpoint: f64,
    pub kind: BoundaryKind,
    pub scale_limit: ExtReal,
}

/// Mass of the speed measure restricted to `j` near its left (`left = true`)
/// or right endpoint.
fn speed_near(spec: &DiffusionSpec, e: &EffectiveInterval, left: bool) -> ExtReal {
    let j = &e.interval;
    let base = e.base();
    let probe = if left {
        if j.a().is_finite() {
            Interval::open(j.a(), (j.a() + 1.0).min(base))
        } else {
            Interval::open(j.a(), base)
        }
    } else if j.b().is_finite() {
        Interval::open((j.b() - 1.0).max(base), j.b())
    } else {
        Interval::open(base, j.b())
    };
    match probe {
        Ok(p) => spec.speed().mass(&p),
        Err(_) => ExtReal::ZERO,
    }
}

/// The Dirichlet-condition cases at the left and right endpoint: the endpoint
/// is an excluded endpoint of the state space, the scale limit is finite and
/// the speed measure has finite mass nearby.
pub(crate) fn dirichlet_flags(spec: &DiffusionSpec, e: &EffectiveInterval) -> (bool, bool) {
    let state = spec.state();
    let j = &e.interval;
    let l0 = j.a() == state.a()
        && !state.left_closed()
        && !e.scale.left_limit().is_neg_inf()
        && speed_near(spec, e, true).is_finite();
    let r0 = j.b() == state.b()
        && !state.right_closed()
        && !e.scale.right_limit().is_pos_inf()
        && speed_near(spec, e, false).is_finite();
    (l0, r0)
}

fn adapted_status(c: EndpointCheck) -> CheckStatus {
    match c {
        EndpointCheck::Holds => CheckStatus::Pass,
        EndpointCheck::Fails => CheckStatus::Fail,
        EndpointCheck::Unconstrained => CheckStatus::NotApplicable,
    }
}

/// Checks the representation hypotheses: speed measure fully supported and
/// Radon, intervals inside the state space and pairwise disjoint, scales
/// adapted, Dirichlet-condition flags, and absolute continuity of the killing
/// measure off the effective intervals.
pub fn validate(spec: &DiffusionSpec) -> ValidationReport {
    let mut r = ValidationReport { checks: Vec::new() };
    let state = *spec.state();
    r.push("state", "interval", CheckStatus::Pass, state.to_string());

    let m = spec.speed();
    match m.validate() {
        Ok(()) => r.push("speed", "components", CheckStatus::Pass, String::new()),
        Err(e) => r.push("speed", "components", CheckStatus::Fail, e.to_string()),
    }
    if m.is_fully_supported() {
        r.push("speed", "full-support", CheckStatus::Pass, String::new());
    } else {
        r.push("speed", "full-support", CheckStatus::Fail, "some open sub-interval has zero mass".into());
    }
    match m.is_radon_on(&state) {
        Ok(()) => r.push("speed", "radon", CheckStatus::Pass, String::new()),
        Err(why) => r.push("speed", "radon", CheckStatus::Fail, why),
    }

    let all = spec.intervals();
    for (n, e) in all.iter().enumerate() {
        if !matches!(e.origin, Origin::Explicit(_)) {
            continue;
        }
        let subject = format!("interval.{n}");
        let j = e.interval;
        r.push(&subject, "interval", CheckStatus::Pass, format!("{} scale={}", j, e.scale.describe()));
        if j.is_subset_of(&state) {
            r.push(&subject, "containment", CheckStatus::Pass, String::new());
        } else {
            r.push(&subject, "containment", CheckStatus::Fail, format!("{j} is not inside {state}"));
        }
        let ad = e.scale.is_adapted(&state);
        let member = |closed: bool| if closed { "included" } else { "excluded" };
        r.push(
            &subject,
            "(A)",
            adapted_status(ad.left),
            format!(
                "at {}: s = {}, endpoint {}",
                crate::measures::interval::fmt_point(j.a()),
                ad.left_limit,
                member(j.left_closed())
            ),
        );
        r.push(
            &subject,
            "(B)",
            adapted_status(ad.right),
            format!(
                "at {}: s = {}, endpoint {}",
                crate::measures::interval::fmt_point(j.b()),
                ad.right_limit,
                member(j.right_closed())
            ),
        );
        let (l0, r0) = dirichlet_flags(spec, e);
        let flag = |b: bool| if b { CheckStatus::Active } else { CheckStatus::Inactive };
        r.push(&subject, "(L0)", flag(l0), String::new());
        r.push(&subject, "(R0)", flag(r0), String::new());
    }

    for (f, fam) in spec.families().iter().enumerate() {
        let subject = format!("family.{f}");
        let hull = Interval::closed(fam.set.lo(), fam.set.hi()).expect("Cantor hull");
        r.push(&subject, "gaps", CheckStatus::Pass, fam.describe());
        if hull.is_subset_of(&state) {
            r.push(&subject, "containment", CheckStatus::Pass, String::new());
        } else {
            r.push(&subject, "containment", CheckStatus::Fail, format!("{hull} is not inside {state}"));
        }
        // closed gaps with finite linear scales satisfy both conditions
        r.push(&subject, "(A)", CheckStatus::Pass, "closed gaps, finite scale".into());
        r.push(&subject, "(B)", CheckStatus::Pass, "closed gaps, finite scale".into());
        let open_hull = Interval::open(fam.set.lo(), fam.set.hi()).expect("Cantor hull");
        for s in spec.explicit_scales() {
            if s.domain().intersect(&open_hull).is_some() {
                r.push(
                    &subject,
                    "disjoint",
                    CheckStatus::Fail,
                    format!("explicit interval {} overlaps the gaps", s.domain()),
                );
            }
        }
    }

    let mut overlap = None;
    for w in all.windows(2) {
        if w[0].interval.meets(&w[1].interval) {
            overlap = Some((w[0].interval, w[1].interval));
            break;
        }
    }
    match overlap {
        None => r.push("intervals", "disjoint", CheckStatus::Pass, format!("{} intervals", all.len())),
        Some((x, y)) => r.push("intervals", "disjoint", CheckStatus::Fail, format!("{x} meets {y}")),
    }

    if let Some(k) = spec.killing() {
        match k.is_radon_on(&state) {
            Ok(()) => r.push("killing", "radon", CheckStatus::Pass, String::new()),
            Err(why) => r.push("killing", "radon", CheckStatus::Fail, why),
        }
        let (status, detail) = killing_abs_cont(spec);
        r.push("killing", "k<<m", status, detail);
    }
    r
}

/// `k << m` on the complement of the effective intervals, decided on the
/// component structure.
fn killing_abs_cont(spec: &DiffusionSpec) -> (CheckStatus, String) {
    let k = spec.killing().expect("killing present");
    let m = spec.speed();
    let state = spec.state();
    let covers: Vec<(f64, f64)> = spec
        .explicit_scales()
        .iter()
        .map(|s| (s.domain().a(), s.domain().b()))
        .collect();
    let off = ranges::subtract(&[(state.a(), state.b())], &covers);
    let in_intervals = |x: f64| spec.interval_at(x).is_some();

    for a in &k.atoms {
        if in_intervals(a.point) {
            continue;
        }
        if !m.atoms.iter().any(|b| b.point == a.point) {
            return (CheckStatus::Fail, format!("killing atom at {} where the speed measure has none", a.point));
        }
    }
    let (k_ac, k_sing) = k.lebesgue_decompose();
    for c in &k_sing.cantors {
        let lies_inside = covers.iter().any(|&(a, b)| a <= c.set.lo() && c.set.hi() <= b);
        if lies_inside {
            continue;
        }
        if m.cantors.contains(c) {
            continue;
        }
        if m.cantors.is_empty() && m.cascades.is_empty() {
            return (CheckStatus::Fail, format!("singular killing part on {} not charged by m", c.set.describe()));
        }
        return (CheckStatus::Undecidable, format!("cannot compare singular parts on {}", c.set.describe()));
    }
    for c in &k_sing.cascades {
        if m.cascades.contains(c) {
            continue;
        }
        return (CheckStatus::Undecidable, "cannot compare singular cascade parts".into());
    }
    // Lebesgue part: wherever k has positive density off the intervals, m
    // must have an a.e. positive density.
    for seg in &k_ac.segments {
        if seg.primitive.is_zero() {
            continue;
        }
        for &(u, v) in &off {
            let (p, q) = (u.max(seg.support.a()), v.min(seg.support.b()));
            if p < q && m.null_density_length(p, q) > 0.0 {
                let family_only = spec
                    .families()
                    .iter()
                    .any(|f| f.set.lo() <= p && q <= f.set.hi() && !f.set.is_fat());
                if !family_only {
                    return (
                        CheckStatus::Fail,
                        format!("killing density on ({p}, {q}) where m has no density"),
                    );
                }
            }
        }
    }
    if !k_ac.gap_densities.is_empty() {
        return (CheckStatus::Undecidable, "killing gap densities are not compared".into());
    }
    (CheckStatus::Pass, String::new())
}

/// Verdicts for the two endpoints of the `n`-th effective interval.
pub fn boundary_classification(spec: &DiffusionSpec, n: usize) -> Result<(BoundaryVerdict, BoundaryVerdict)> {
    let e = spec.interval(n)?;
    Ok(classify(spec, e))
}

pub(crate) fn classify(spec: &DiffusionSpec, e: &EffectiveInterval) -> (BoundaryVerdict, BoundaryVerdict) {
    let (l0, r0) = dirichlet_flags(spec, e);
    let (sa, sb) = (e.scale.left_limit(), e.scale.right_limit());
    let kind = |closed: bool, dirichlet: bool, infinite: bool| {
        if closed {
            BoundaryKind::Reflecting
        } else if dirichlet {
            BoundaryKind::Absorbing
        } else if infinite {
            BoundaryKind::Unreachable
        } else {
            BoundaryKind::TrapAdjacent
        }
    };
    (
        BoundaryVerdict {
            endpoint: e.interval.a(),
            kind: kind(e.interval.left_closed(), l0, sa.is_neg_inf()),
            scale_limit: sa,
        },
        BoundaryVerdict {
            endpoint: e.interval.b(),
            kind: kind(e.interval.right_closed(), r0, sb.is_pos_inf()),
            scale_limit: sb,
        },
    )
}
