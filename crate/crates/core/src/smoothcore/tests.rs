use super::*;
use crate::dirichlet::validate;
use crate::extended::ExtReal;
use crate::gallery;
use crate::measures::{DensitySegment, Interval, MeasureSpec, Primitive};
use crate::scale::ScaleFunction;

#[test]
fn split_line_is_core() {
    let spec = gallery::split_line_exp_recip().unwrap();
    assert!(validate(&spec).is_valid());
    let v = is_special_standard_core(&spec).unwrap();
    assert_eq!(v.answer, CoreAnswer::Yes);
    let m = cinf_merge(&spec).unwrap();
    assert_eq!(m.merged.len(), 2);
    assert_eq!(m.spec.explicit_scales(), spec.explicit_scales());
}

#[test]
fn cantor_gaps_connect_and_merge_to_line() {
    let spec = gallery::cantor_gap_extension().unwrap();
    assert!(validate(&spec).is_valid());
    let sm = contains_smooth(&spec, &spec.default_window()).unwrap();
    assert!(sm.contained);
    let w = scale_connected(&spec, 0, spec.intervals().len() - 1, false).unwrap();
    assert!(w.connected);
    assert!((w.lambda_s.to_f64() - 3.0).abs() < 1e-9, "{:?}", w);
    assert_eq!(w.lambda_l, 0.0);
    let v = is_special_standard_core(&spec).unwrap();
    assert_eq!(v.answer, CoreAnswer::No);
    let m = cinf_merge(&spec).unwrap();
    assert_eq!(m.class_count(), 1);
    let s = &m.merged[0].scale;
    assert!(s.domain().is_real_line());
    assert!(s.is_natural(), "{}", s.describe());
}

#[test]
fn unit_mass_gaps_are_isolated() {
    let spec = gallery::cantor_gap_unit_mass().unwrap();
    let g = connection_graph(&spec, false);
    assert!(g.all_singletons());
    assert!(g.links.iter().all(|l| l.lambda_s.is_pos_inf()));
    assert_eq!(is_special_standard_core(&spec).unwrap().answer, CoreAnswer::Yes);
}

#[test]
fn fat_cantor_gaps_are_isolated() {
    let spec = gallery::fat_cantor_gap_extension().unwrap();
    let g = connection_graph(&spec, false);
    assert!(g.all_singletons());
    assert!(g.links.iter().all(|l| l.lambda_s.is_finite() && l.lambda_l > 0.0));
    assert_eq!(is_special_standard_core(&spec).unwrap().answer, CoreAnswer::Yes);
}

#[test]
fn cantor_augmented_scale_merges_to_reflected_bm() {
    let spec = gallery::cantor_augmented_scale().unwrap();
    assert!(validate(&spec).is_valid(), "{}", validate(&spec).to_text());
    assert_eq!(spec.interval(0).unwrap().scale.left_limit(), ExtReal::NegInf);
    let v = is_special_standard_core(&spec).unwrap();
    assert_eq!(v.answer, CoreAnswer::No);
    assert!(!v.condition_one());
    let m = cinf_merge(&spec).unwrap();
    let s = &m.merged[0].scale;
    assert_eq!(*s.domain(), Interval::closed(0.0, 1.0).unwrap());
    assert!(s.is_natural());
}

#[test]
fn cubic_scale_excludes_smooth_functions() {
    let line = Interval::real_line();
    let ds = MeasureSpec::zero(line)
        .with_density(line, Primitive::Power { coef: 1.0, center: 0.0, exponent: 2.0 })
        .unwrap();
    let s = ScaleFunction::from_measure(line, Some(0.0), ds).unwrap();
    let spec = crate::dirichlet::DiffusionSpec::with_lebesgue_speed(line).with_interval(s);
    let w = Interval::closed(-1.0, 1.0).unwrap();
    assert!(!contains_smooth(&spec, &w).unwrap().contained);
    assert!(cinf_merge(&spec).is_err());
}

fn density(segs: &[(f64, f64, Primitive)]) -> HamzaDensity {
    HamzaDensity::from_segments(
        segs.iter()
            .map(|&(a, b, p)| DensitySegment {
                support: Interval::open(a, b).unwrap(),
                primitive: p,
            })
            .collect(),
    )
}

#[test]
fn hamza_examples() {
    let inf = f64::INFINITY;
    let sq = density(&[(-inf, inf, Primitive::Power { coef: 1.0, center: 0.0, exponent: 2.0 })]);
    let r = regular_set(&sq).unwrap();
    assert_eq!(r, vec![Interval::open(-inf, 0.0).unwrap(), Interval::open(0.0, inf).unwrap()]);
    assert_eq!(hamza_closable(&sq).unwrap(), HamzaVerdict::Closable);
    let spec = intervals_from_density(&sq).unwrap();
    assert_eq!(spec.intervals().len(), 2);
    assert_eq!(spec.interval(0).unwrap().scale.right_limit(), ExtReal::PosInf);
    assert_eq!(spec.interval(1).unwrap().scale.left_limit(), ExtReal::NegInf);
    assert!(validate(&spec).is_valid());

    let root = density(&[(-inf, inf, Primitive::Power { coef: 1.0, center: 0.0, exponent: 0.5 })]);
    assert_eq!(regular_set(&root).unwrap(), vec![Interval::real_line()]);

    let one = density(&[(-inf, inf, Primitive::Constant(1.0))]);
    let spec = intervals_from_density(&one).unwrap();
    assert!(spec.interval(0).unwrap().scale.is_natural());
    assert_eq!(is_special_standard_core(&spec).unwrap().answer, CoreAnswer::Yes);

    let step = density(&[(0.0, inf, Primitive::Constant(1.0))]);
    assert_eq!(hamza_closable(&step).unwrap(), HamzaVerdict::Closable);
    let spec = intervals_from_density(&step).unwrap();
    let j = spec.interval(0).unwrap().interval;
    assert_eq!(j, Interval::new(0.0, inf, true, false).unwrap());
    assert!(spec.is_trap(-1.0));

    let atom = HamzaDensity::new(MeasureSpec::lebesgue(Interval::real_line()).with_atom(0.0, 1.0));
    assert!(matches!(hamza_closable(&atom).unwrap(), HamzaVerdict::NotClosable(_)));
}

#[test]
fn numeric_regular_set_agrees_on_simple_cases() {
    let inf = f64::INFINITY;
    let sq = density(&[(-inf, inf, Primitive::Power { coef: 1.0, center: 0.0, exponent: 2.0 })]);
    let n = regular_set_numeric(&sq, NUMERIC_DIVERGENCE_THRESHOLD).unwrap();
    assert!(!n.certified);
    assert_eq!(n.intervals.len(), 2);
    let root = density(&[(-inf, inf, Primitive::Power { coef: 1.0, center: 0.0, exponent: 0.5 })]);
    assert_eq!(regular_set_numeric(&root, NUMERIC_DIVERGENCE_THRESHOLD).unwrap().intervals.len(), 1);
}

#[test]
fn merge_is_idempotent_on_gallery() {
    for spec in [
        gallery::cantor_gap_extension().unwrap(),
        gallery::cantor_augmented_scale().unwrap(),
        gallery::split_line_exp_recip().unwrap(),
        gallery::fat_cantor_gap_extension().unwrap(),
    ] {
        let once = cinf_merge(&spec).unwrap();
        let twice = cinf_merge(&once.spec).unwrap();
        assert_eq!(once.spec, twice.spec);
        assert_eq!(is_special_standard_core(&once.spec).unwrap().answer, CoreAnswer::Yes);
    }
}
