//! Whether one scale function generates a Dirichlet subspace of another:
//! `ds~ << ds` with density taking only the values 0 and 1.

use crate::error::{Error, Result};
use crate::measures::measure::midpoint;
use crate::measures::{GapDensity, MeasureSpec, Primitive};
use crate::scale::ScaleFunction;

#[derive(Debug, Clone, PartialEq)]
pub enum SubspaceVerdict {
    Yes,
    No(String),
    Undecidable(String),
}

#[derive(Debug, Clone, PartialEq)]
enum PieceForm<'a> {
    Zero,
    Prims(Vec<Primitive>),
    Gaps(&'a GapDensity),
    Mixed,
}

fn piece_form(mu: &MeasureSpec, u: f64, v: f64) -> PieceForm<'_> {
    let fams: Vec<&GapDensity> = mu
        .gap_densities
        .iter()
        .filter(|g| g.set.lo() <= u && g.set.hi() >= v)
        .collect();
    let bodies = mu
        .cantors
        .iter()
        .filter(|c| !c.is_singular() && c.set.lo() <= u && c.set.hi() >= v)
        .count();
    let mut constant = 0.0;
    let mut prims = Vec::new();
    for s in &mu.segments {
        if s.primitive.is_zero() || !(s.support.a() <= u && s.support.b() >= v) {
            continue;
        }
        match s.primitive {
            Primitive::Constant(c) => constant += c,
            p => prims.push(p),
        }
    }
    if constant > 0.0 {
        prims.push(Primitive::Constant(constant));
    }
    match (fams.len(), bodies, prims.is_empty()) {
        (0, 0, true) => PieceForm::Zero,
        (0, 0, false) => PieceForm::Prims(prims),
        (1, 0, true) => PieceForm::Gaps(fams[0]),
        _ => PieceForm::Mixed,
    }
}

fn same_multiset(a: &[Primitive], b: &[Primitive]) -> bool {
    a.len() == b.len() && a.iter().all(|p| b.iter().filter(|q| *q == p).count() == a.iter().filter(|q| *q == p).count())
}

fn compare(t: &PieceForm, f: &PieceForm, at: f64) -> SubspaceVerdict {
    use PieceForm::*;
    let no = |why: String| SubspaceVerdict::No(format!("near {at}: {why}"));
    match (t, f) {
        (Zero, _) => SubspaceVerdict::Yes,
        (_, Zero) => no("ds~ charges a set where ds has no density".into()),
        (Prims(a), Prims(b)) if same_multiset(a, b) => SubspaceVerdict::Yes,
        (Prims(a), Prims(b)) if a.len() == 1 && b.len() == 1 => match (a[0], b[0]) {
            (Primitive::Constant(x), Primitive::Constant(y)) => no(format!("density ratio {}", x / y)),
            (
                Primitive::Power { coef: c1, center: x1, exponent: e1 },
                Primitive::Power { coef: c2, center: x2, exponent: e2 },
            ) if x1 == x2 && e1 == e2 => no(format!("density ratio {}", c1 / c2)),
            (
                Primitive::ExpRecip { coef: c1, center: x1, rate: r1 },
                Primitive::ExpRecip { coef: c2, center: x2, rate: r2 },
            ) if x1 == x2 && r1 == r2 => no(format!("density ratio {}", c1 / c2)),
            _ => SubspaceVerdict::Undecidable(format!("near {at}: densities of different type")),
        },
        (Gaps(g), Prims(b)) if b.len() == 1 => match b[0] {
            Primitive::Constant(c) => {
                if g.exponent == 0.0 && g.coef == c {
                    SubspaceVerdict::Yes
                } else {
                    no("density ratio on the gaps is not identically 1".into())
                }
            }
            _ => SubspaceVerdict::Undecidable(format!("near {at}: gap density against a non-constant density")),
        },
        (Prims(a), Gaps(g)) if a.len() == 1 => match a[0] {
            Primitive::Constant(c) => {
                if g.set.is_fat() {
                    no("ds~ charges a Cantor set of positive length that ds does not".into())
                } else if g.exponent == 0.0 && g.coef == c {
                    SubspaceVerdict::Yes
                } else {
                    no("density ratio on the gaps is not identically 1".into())
                }
            }
            _ => SubspaceVerdict::Undecidable(format!("near {at}: density against a gap density")),
        },
        (Gaps(a), Gaps(b)) if a.set == b.set => {
            if a.coef == b.coef && a.exponent == b.exponent {
                SubspaceVerdict::Yes
            } else {
                no("density ratio on the gaps is not identically 1".into())
            }
        }
        _ => SubspaceVerdict::Undecidable(format!("near {at}: component structures are not comparable")),
    }
}

/// Decides whether `s_tilde` generates a regular Dirichlet subspace of the
/// form generated by `s` on the same interval.
pub fn is_dirichlet_subspace(s_tilde: &ScaleFunction, s: &ScaleFunction) -> Result<SubspaceVerdict> {
    if s_tilde.domain() != s.domain() {
        return Err(Error::Precondition(format!(
            "scale functions live on different intervals {} and {}",
            s_tilde.domain(),
            s.domain()
        )));
    }
    let (t_ac, t_sing) = s_tilde.ds().lebesgue_decompose();
    let (f_ac, f_sing) = s.ds().lebesgue_decompose();
    for c in &t_sing.cantors {
        if !f_sing.cantors.contains(c) {
            if f_sing.is_zero() {
                return Ok(SubspaceVerdict::No(format!(
                    "singular part on {} is not charged by ds",
                    c.set.describe()
                )));
            }
            return Ok(SubspaceVerdict::Undecidable("singular parts differ".into()));
        }
    }
    for c in &t_sing.cascades {
        if !f_sing.cascades.contains(c) {
            if f_sing.is_zero() {
                return Ok(SubspaceVerdict::No("singular cascade is not charged by ds".into()));
            }
            return Ok(SubspaceVerdict::Undecidable("singular parts differ".into()));
        }
    }
    let j = s.domain();
    let mut cuts = vec![j.a()];
    let mut bps: Vec<f64> = t_ac.breakpoints();
    bps.extend(f_ac.breakpoints());
    bps.retain(|&x| x > j.a() && x < j.b());
    bps.sort_by(|x, y| x.partial_cmp(y).unwrap());
    bps.dedup();
    cuts.extend(bps);
    cuts.push(j.b());
    let mut undecided = None;
    for w in cuts.windows(2) {
        let (u, v) = (w[0], w[1]);
        let at = midpoint(u, v);
        match compare(&piece_form(&t_ac, u, v), &piece_form(&f_ac, u, v), at) {
            SubspaceVerdict::Yes => {}
            SubspaceVerdict::No(why) => return Ok(SubspaceVerdict::No(why)),
            SubspaceVerdict::Undecidable(why) => undecided = undecided.or(Some(why)),
        }
    }
    Ok(match undecided {
        Some(why) => SubspaceVerdict::Undecidable(why),
        None => SubspaceVerdict::Yes,
    })
}
