//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed};

use linear_diffusion::dirichlet::{self, DiffusionSpec, GapFamily, TestFunction};
use linear_diffusion::measures::{CantorComponent, CantorKind, CantorSet, Interval, MeasureSpec, Primitive};
use linear_diffusion::scale::{ClosedForm, ScaleFunction};
use linear_diffusion::smoothcore;

pub const SEED: u64 = 0x5eed_1d1f;

pub fn config(cases: u32) -> Config {
    Config {
        cases,
        rng_seed: RngSeed::Fixed(SEED),
        failure_persistence: None,
        ..Config::default()
    }
}

/// Closed-form scale with the derivative and antiderivative written out here,
/// independently of the library.
#[derive(Debug, Clone, Copy)]
pub enum OracleScale {
    Linear(f64),
    Power(f64),
    Log,
}

impl OracleScale {
    pub fn form(self) -> ClosedForm {
        match self {
            OracleScale::Linear(slope) => ClosedForm::Linear { slope },
            OracleScale::Power(alpha) => ClosedForm::Power { alpha },
            OracleScale::Log => ClosedForm::Log,
        }
    }

    pub fn density(self, x: f64) -> f64 {
        match self {
            OracleScale::Linear(c) => c,
            OracleScale::Power(a) => x.powf(a - 1.0),
            OracleScale::Log => 1.0 / x,
        }
    }

    pub fn antiderivative(self, x: f64) -> f64 {
        match self {
            OracleScale::Linear(c) => c * x,
            OracleScale::Power(a) => x.powf(a) / a,
            OracleScale::Log => x.ln(),
        }
    }
}

pub fn arb_oracle_scale() -> impl Strategy<Value = OracleScale> {
    prop_oneof![
        (0.2f64..5.0).prop_map(OracleScale::Linear),
        prop_oneof![-1.5f64..-0.1, 0.1f64..2.5].prop_map(OracleScale::Power),
        Just(OracleScale::Log),
    ]
}

/// Three closed effective intervals inside `(0.2, 4.2)` on the real line with
/// Lebesgue speed, optional constant killing on `[0, 5]` plus killing atoms
/// sitting on knots or right interval ends, and a test function
/// that is piecewise linear in scale on each interval and constant on the
/// two gaps between them.
#[derive(Debug, Clone)]
pub struct ThreeIntervals {
    pub points: [f64; 6],
    pub scales: [OracleScale; 3],
    pub killing: f64,
    pub knots: [Vec<(f64, f64)>; 3],
    pub gap_values: [f64; 2],
    /// Per interval: `(i, mass)`; the atom sits on knot `i % (len + 1)`, where
    /// `len` means the right end of the interval. Mass 0 means no atom.
    pub atoms: [(usize, f64); 3],
}

pub const KILLING_SUPPORT: (f64, f64) = (0.0, 5.0);

impl ThreeIntervals {
    pub fn spec(&self) -> DiffusionSpec {
        let mut spec = DiffusionSpec::with_lebesgue_speed(Interval::real_line());
        for k in 0..3 {
            let j = Interval::closed(self.points[2 * k], self.points[2 * k + 1]).unwrap();
            spec = spec.with_interval(ScaleFunction::closed(j, self.scales[k].form(), None).unwrap());
        }
        let atoms = self.atom_points();
        if self.killing > 0.0 || !atoms.is_empty() {
            let (a, b) = KILLING_SUPPORT;
            let mut k = MeasureSpec::zero(Interval::real_line());
            if self.killing > 0.0 {
                k = k.with_density(Interval::closed(a, b).unwrap(), Primitive::Constant(self.killing)).unwrap();
            }
            for (x, m) in atoms {
                k = k.with_atom(x, m);
            }
            spec = spec.with_killing(k);
        }
        spec
    }

    pub fn atom_points(&self) -> Vec<(f64, f64)> {
        let mut out = Vec::new();
        for k in 0..3 {
            let (i, m) = self.atoms[k];
            if m > 0.0 {
                let kn = &self.knots[k];
                let i = i % (kn.len() + 1);
                let x = if i == kn.len() { self.points[2 * k + 1] } else { kn[i].0 };
                out.push((x, m));
            }
        }
        out
    }

    pub fn function(&self, spec: &DiffusionSpec) -> TestFunction {
        let all: Vec<(f64, f64)> = self.knots.iter().flatten().copied().collect();
        let mut u = TestFunction::from_knots(spec, &all).unwrap();
        for g in 0..2 {
            let gap = Interval::open(self.points[2 * g + 1], self.points[2 * g + 2]).unwrap();
            u = u.with_off_value(gap, self.gap_values[g]);
        }
        u
    }

    /// Value of the test function, computed from the oracle antiderivatives.
    pub fn value(&self, x: f64) -> f64 {
        for k in 0..3 {
            let (a, b) = (self.points[2 * k], self.points[2 * k + 1]);
            if x >= a && x <= b {
                let kn = &self.knots[k];
                if x <= kn[0].0 {
                    return kn[0].1;
                }
                if x >= kn[kn.len() - 1].0 {
                    return kn[kn.len() - 1].1;
                }
                let i = kn.iter().position(|&(kx, _)| kx > x).unwrap() - 1;
                let ((x0, u0), (x1, u1)) = (kn[i], kn[i + 1]);
                let s = self.scales[k];
                let t = (s.antiderivative(x) - s.antiderivative(x0)) / (s.antiderivative(x1) - s.antiderivative(x0));
                return u0 + (u1 - u0) * t;
            }
        }
        for g in 0..2 {
            if x > self.points[2 * g + 1] && x < self.points[2 * g + 2] {
                return self.gap_values[g];
            }
        }
        0.0
    }

    /// Riemann-Stieltjes energy with `panels` panels in total: the form sums
    /// `(du)^2 / (s'(mid) h)` on panels refining each knot segment, the
    /// killing term is the midpoint rule for `int u^2 k dx`.
    pub fn brute_force_energy(&self, panels: usize) -> f64 {
        let total_len: f64 = self
            .knots
            .iter()
            .map(|kn| kn.last().unwrap().0 - kn[0].0)
            .sum::<f64>()
            .max(1e-300);
        let mut form = 0.0;
        for k in 0..3 {
            let s = self.scales[k];
            for w in self.knots[k].windows(2) {
                let ((x0, _), (x1, _)) = (w[0], w[1]);
                let n = ((panels as f64) * (x1 - x0) / total_len).ceil().max(1.0) as usize;
                let h = (x1 - x0) / n as f64;
                let mut prev = self.value(x0);
                for i in 0..n {
                    let xr = if i + 1 == n { x1 } else { x0 + (i + 1) as f64 * h };
                    let xl = x0 + i as f64 * h;
                    let next = if i + 1 == n { w[1].1 } else { self.value(xr) };
                    let du = next - prev;
                    form += 0.5 * du * du / (s.density(0.5 * (xl + xr)) * (xr - xl));
                    prev = next;
                }
            }
        }
        let mut kill = 0.0;
        if self.killing > 0.0 {
            // midpoint rule on each piece where u is continuous
            let (a, b) = KILLING_SUPPORT;
            let mut cuts = vec![a];
            cuts.extend(self.points.iter().copied().filter(|p| *p > a && *p < b));
            cuts.push(b);
            for w in cuts.windows(2) {
                let n = ((panels as f64) * (w[1] - w[0]) / (b - a)).ceil().max(1.0) as usize;
                let h = (w[1] - w[0]) / n as f64;
                let mut sum = 0.0;
                for i in 0..n {
                    let v = self.value(w[0] + (i as f64 + 0.5) * h);
                    sum += v * v;
                }
                kill += sum * h;
            }
            kill *= self.killing;
        }
        for (x, m) in self.atom_points() {
            let v = self.value(x);
            kill += m * v * v;
        }
        form + kill
    }
}

fn arb_knots(a: f64, b: f64) -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((0.0f64..1.0, -2.0f64..2.0), 2..5).prop_map(move |mut v| {
        v.sort_by(|p, q| p.0.partial_cmp(&q.0).unwrap());
        v.dedup_by(|p, q| (p.0 - q.0).abs() < 1e-3);
        let mut out: Vec<(f64, f64)> = v.into_iter().map(|(t, u)| (a + t * (b - a), u)).collect();
        if out.len() < 2 {
            out.push((b, 0.5));
        }
        out
    })
}

fn arb_knot_atom() -> impl Strategy<Value = (usize, f64)> {
    (0usize..8, prop_oneof![Just(0.0), 0.1f64..2.0])
}

pub fn arb_three_intervals() -> impl Strategy<Value = ThreeIntervals> {
    (
        prop::collection::vec(0.05f64..1.0, 7),
        [arb_oracle_scale(), arb_oracle_scale(), arb_oracle_scale()],
        prop_oneof![Just(0.0), 0.1f64..2.0],
        [-2.0f64..2.0, -2.0f64..2.0],
        [arb_knot_atom(), arb_knot_atom(), arb_knot_atom()],
    )
        .prop_flat_map(|(steps, scales, killing, gap_values, atoms)| {
            let total: f64 = steps.iter().sum();
            let mut points = [0.0; 6];
            let mut x = 0.2;
            for (p, s) in points.iter_mut().zip(&steps) {
                x += 4.0 * s / total;
                *p = x;
            }
            let knots = [
                arb_knots(points[0], points[1]),
                arb_knots(points[2], points[3]),
                arb_knots(points[4], points[5]),
            ];
            (Just(points), Just(scales), Just(killing), knots, Just(gap_values), Just(atoms))
        })
        .prop_map(|(points, scales, killing, knots, gap_values, atoms)| ThreeIntervals {
            points,
            scales,
            killing,
            knots,
            gap_values,
            atoms,
        })
}

/// The outer half-lines with natural scale plus the gap family of a random
/// (possibly fat) Cantor set in `[0, 1]`, materialized to a small depth.
pub fn arb_gap_system() -> impl Strategy<Value = DiffusionSpec> {
    let set = prop_oneof![
        3 => (0.2f64..0.45).prop_map(|r| CantorSet::new(0.0, 1.0, CantorKind::Standard { keep_ratio: r }).unwrap()),
        1 => (0.1f64..0.6, 0.1f64..0.6, 0.2f64..0.8).prop_map(|(a, b, t)| {
            CantorSet::new(0.0, 1.0, CantorKind::Fat { removed: vec![a, b], tail_ratio: t }).unwrap()
        }),
    ];
    (
        set,
        0.2f64..3.0,
        prop::sample::select(vec![-1.5, -1.0, -0.5, 0.0, 0.5]),
        any::<bool>(),
        any::<bool>(),
        3u32..6,
    )
        .prop_map(|(set, coef, exponent, left, right, depth)| {
            let mut spec = DiffusionSpec::with_lebesgue_speed(Interval::real_line());
            if left {
                let j = Interval::new(f64::NEG_INFINITY, 0.0, false, true).unwrap();
                spec = spec.with_interval(ScaleFunction::natural(j).unwrap());
            }
            if right {
                let j = Interval::new(1.0, f64::INFINITY, true, false).unwrap();
                spec = spec.with_interval(ScaleFunction::natural(j).unwrap());
            }
            spec.with_family(GapFamily::new(set, coef, exponent).unwrap()).with_truncation_depth(depth)
        })
}

/// Effective intervals on the line, each separated from the previous one by
/// a gap, a shared endpoint, or a gap filled with the gap family of a
/// middle-thirds Cantor set. Scales may carry a Cantor part.
pub fn arb_chain_system() -> impl Strategy<Value = DiffusionSpec> {
    let link = prop_oneof![Just(None), Just(Some(-1.0)), Just(Some(0.0)), Just(Some(f64::NAN))];
    prop::collection::vec((0.3f64..2.0, 0.1f64..1.0, link, prop_oneof![Just(0.0), 0.5f64..2.0]), 1..5).prop_map(
        |parts| {
            let mut spec = DiffusionSpec::with_lebesgue_speed(Interval::real_line()).with_truncation_depth(4);
            let mut x = 0.0;
            for (k, (len, gap, link, cantor)) in parts.iter().enumerate() {
                // NaN link: share the endpoint with the previous interval
                let touch = k > 0 && matches!(link, Some(e) if e.is_nan());
                let a = if k == 0 || touch { x } else { x + gap };
                if k > 0 {
                    if let Some(e) = link.filter(|e| !e.is_nan()) {
                        let set = CantorSet::standard(x, a).unwrap();
                        spec = spec.with_family(GapFamily::new(set, 1.0, e).unwrap());
                    }
                }
                let b = a + len;
                // a shared endpoint belongs to the left neighbour; the right
                // one is open there and needs an infinite scale limit
                let j = Interval::new(a, b, !touch, true).unwrap();
                let mut ds = MeasureSpec::zero(j);
                if touch {
                    ds = ds
                        .with_density(j, Primitive::Power { coef: 1.0, center: a, exponent: -1.0 })
                        .unwrap();
                } else {
                    ds = ds.with_density(j, Primitive::Constant(1.0)).unwrap();
                }
                if *cantor > 0.0 {
                    let c = CantorComponent::new(CantorSet::standard(a + 0.25 * len, a + 0.75 * len).unwrap(), *cantor).unwrap();
                    ds = ds.with_cantor(c);
                }
                let base = if touch { Some(a + 0.5 * len) } else { None };
                spec = spec.with_interval(ScaleFunction::from_measure(j, base, ds).unwrap());
                x = b;
            }
            spec
        },
    )
}

/// Random measures on `[-2, 3]` mixing every component type.
pub fn arb_measure() -> impl Strategy<Value = MeasureSpec> {
    let carrier = Interval::closed(-2.0, 3.0).unwrap();
    let seg = (-2.0f64..3.0, 0.05f64..2.0, 0usize..3, 0.1f64..3.0, -0.9f64..2.0).prop_map(|(a, len, kind, c, e)| {
        let b = (a + len).min(3.0);
        let j = Interval::closed(a, b.max(a + 1e-3)).unwrap();
        let p = match kind {
            0 => Primitive::Constant(c),
            1 => Primitive::Power { coef: c, center: a, exponent: e },
            _ => Primitive::Power { coef: c, center: -3.0, exponent: e },
        };
        (j, p)
    });
    let atom = (-2.0f64..3.0, 0.1f64..2.0);
    let cantor = (-2.0f64..2.0, 0.1f64..1.0, 0.2f64..0.45, 0.1f64..2.0, any::<bool>());
    (
        prop::collection::vec(seg, 0..4),
        prop::collection::vec(atom, 0..3),
        prop::collection::vec(cantor, 0..3),
    )
        .prop_map(move |(segs, atoms, cantors)| {
            let mut m = MeasureSpec::zero(carrier);
            for (j, p) in segs {
                m = m.with_density(j, p).unwrap();
            }
            for (x, w) in atoms {
                m = m.with_atom(x, w);
            }
            for (lo, len, r, w, fat) in cantors {
                let kind = if fat {
                    CantorKind::Fat { removed: vec![r], tail_ratio: 0.5 }
                } else {
                    CantorKind::Standard { keep_ratio: r }
                };
                m = m.with_cantor(CantorComponent::new(CantorSet::new(lo, lo + len, kind).unwrap(), w).unwrap());
            }
            m
        })
}

pub fn arb_sub_interval() -> impl Strategy<Value = Interval> {
    (-2.5f64..3.5, 0.0f64..3.0, any::<bool>(), any::<bool>())
        .prop_map(|(a, len, l, r)| Interval::new(a, a + len + 1e-3, l, r).unwrap())
}

/// Strictly increasing scales on compact sub-intervals of `(0.1, 5)`.
pub fn arb_scale() -> impl Strategy<Value = ScaleFunction> {
    (0.1f64..2.5, 0.2f64..2.5, arb_oracle_scale(), 0usize..3, 0.1f64..2.0).prop_map(|(a, len, form, kind, w)| {
        let j = Interval::closed(a, a + len).unwrap();
        match kind {
            0 => ScaleFunction::closed(j, form.form(), None).unwrap(),
            1 => {
                let c = CantorComponent::new(CantorSet::standard(a + 0.2 * len, a + 0.7 * len).unwrap(), w).unwrap();
                ScaleFunction::from_measure(j, None, MeasureSpec::lebesgue(j).with_cantor(c)).unwrap()
            }
            _ => {
                let ds = MeasureSpec::zero(j)
                    .with_density(j, Primitive::Power { coef: w, center: 0.0, exponent: -0.5 })
                    .unwrap();
                ScaleFunction::from_measure(j, None, ds).unwrap()
            }
        }
    })
}

pub fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

// ---- property checks, shared by the property suite and the acceptance run

pub fn check_contraction(sys: &ThreeIntervals) -> Result<(), TestCaseError> {
    let spec = sys.spec();
    let u = sys.function(&spec);
    let e = dirichlet::energy(&spec, &u).unwrap().total().to_f64();
    let c = u.clamped(&spec, 0.0, 1.0).unwrap();
    let ec = dirichlet::energy(&spec, &c).unwrap().total().to_f64();
    prop_assert!(ec <= e * (1.0 + 1e-9) + 1e-12, "clamped {ec} > {e}");
    Ok(())
}

pub fn check_quadratic(sys: &ThreeIntervals, c: f64) -> Result<(), TestCaseError> {
    let spec = sys.spec();
    let u = sys.function(&spec);
    let e = dirichlet::energy(&spec, &u).unwrap().total().to_f64();
    let ec = dirichlet::energy(&spec, &u.scaled(c)).unwrap().total().to_f64();
    prop_assert!(rel_close(ec, c * c * e, 1e-9) || (e < 1e-300 && ec < 1e-300), "{ec} vs {}", c * c * e);
    Ok(())
}

pub fn check_equivalence(spec: &DiffusionSpec, i: usize, j: usize, k: usize, use_ac: bool) -> Result<(), TestCaseError> {
    let n = spec.intervals().len();
    let (i, j, k) = (i % n, j % n, k % n);
    let c = |p: usize, q: usize| smoothcore::scale_connected(spec, p, q, use_ac).unwrap().connected;
    prop_assert!(c(i, i));
    prop_assert_eq!(c(i, j), c(j, i));
    if c(i, j) && c(j, k) {
        prop_assert!(c(i, k), "{} ~ {} ~ {} but not {} ~ {}", i, j, k, i, k);
    }
    let g = smoothcore::connection_graph(spec, use_ac);
    prop_assert_eq!(g.class_of(i) == g.class_of(j), c(i, j));
    Ok(())
}

/// `None` when the precondition (smooth functions in the domain) fails.
pub fn merged(spec: &DiffusionSpec) -> Option<smoothcore::MergeResult> {
    match smoothcore::cinf_merge(spec) {
        Ok(m) => Some(m),
        Err(linear_diffusion::Error::Precondition(_)) | Err(linear_diffusion::Error::Undecidable(_)) => None,
        Err(e) => panic!("{e}"),
    }
}

pub fn check_idempotent(spec: &DiffusionSpec) -> Result<(), TestCaseError> {
    let Some(once) = merged(spec) else { return Ok(()) };
    let twice = smoothcore::cinf_merge(&once.spec).unwrap();
    prop_assert_eq!(&twice.spec, &once.spec);
    Ok(())
}

pub fn check_merged_is_core(spec: &DiffusionSpec) -> Result<(), TestCaseError> {
    let Some(m) = merged(spec) else { return Ok(()) };
    prop_assert!(dirichlet::validate(&m.spec).is_valid(), "{}", dirichlet::validate(&m.spec).to_text());
    let v = smoothcore::is_special_standard_core(&m.spec).unwrap();
    prop_assert_eq!(v.answer, smoothcore::CoreAnswer::Yes);
    Ok(())
}

pub fn check_decomposition(mu: &MeasureSpec, js: &[Interval]) -> Result<(), TestCaseError> {
    let (ac, sing) = mu.lebesgue_decompose();
    prop_assert!(ac.atoms.is_empty());
    prop_assert!(ac.cantors.iter().all(|c| !c.is_singular()));
    prop_assert!(sing.segments.is_empty());
    prop_assert!(sing.cantors.iter().all(|c| c.is_singular()));
    let back = ac.add(&sing);
    for j in js {
        let (a, b) = (mu.mass(j).to_f64(), back.mass(j).to_f64());
        prop_assert!(rel_close(a, b, 1e-12) || (a - b).abs() < 1e-12, "{j}: {a} vs {b}");
    }
    Ok(())
}

pub fn check_inverse(s: &ScaleFunction, t: f64) -> Result<(), TestCaseError> {
    let j = s.domain();
    let x = j.a() + t * (j.b() - j.a());
    let y = s.eval(x).unwrap().to_f64();
    let back = s.inverse_eval(y).unwrap();
    prop_assert!((back - x).abs() <= 1e-10 * x.abs().max(1.0), "{x} -> {y} -> {back}");
    Ok(())
}

/// Largest relative gap between the library energy and the brute-force sum
/// over `n` random three-interval systems.
pub fn worst_energy_error(n: usize, panels: usize) -> (f64, ThreeIntervals) {
    use proptest::strategy::ValueTree;
    use proptest::test_runner::TestRunner;
    let mut runner = TestRunner::new(config(n as u32));
    let mut worst: (f64, Option<ThreeIntervals>) = (0.0, None);
    for _ in 0..n {
        let sys = arb_three_intervals().new_tree(&mut runner).unwrap().current();
        let spec = sys.spec();
        let u = sys.function(&spec);
        let lib = dirichlet::energy(&spec, &u).unwrap().total().to_f64();
        let brute = sys.brute_force_energy(panels);
        let rel = (lib - brute).abs() / brute.abs().max(1e-12);
        if worst.1.is_none() || rel >= worst.0 {
            worst = (rel, Some(sys));
        }
    }
    (worst.0, worst.1.unwrap())
}
