use super::*;
use crate::gallery;
use crate::measures::Interval;

fn cfg(delta_s: f64, n_paths: u64) -> SimConfig {
    SimConfig { delta_s: Some(delta_s), n_paths, seed: 7, ..SimConfig::default() }
}

#[test]
fn brownian_grid_has_quarter_points() {
    let spec = gallery::absorbing_brownian_motion().unwrap();
    let chain = build_chain(&spec, 0, &Interval::closed(0.0, 1.0).unwrap(), &cfg(0.25, 1)).unwrap();
    assert_eq!(chain.points, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    assert_eq!(chain.left_row, BoundaryRow::Absorbing);
    assert_eq!(chain.right_row, BoundaryRow::Absorbing);
    assert!(chain.is_symmetric());
}

#[test]
fn brownian_hitting_is_linear() {
    let spec = gallery::absorbing_brownian_motion().unwrap();
    let chain = build_chain(&spec, 0, &Interval::closed(0.0, 1.0).unwrap(), &cfg(0.1, 1)).unwrap();
    let h = exact_hitting(&chain, 0, 10).unwrap();
    for (i, v) in h.iter().enumerate() {
        assert!((v - i as f64 / 10.0).abs() < 1e-12);
    }
    let est = estimate_hitting(&chain, 0.3, 0.0, 1.0, &cfg(0.1, 20_000)).unwrap();
    assert!((est.exact - 0.3).abs() < 1e-12);
    assert!(est.z_score().abs() < 4.0, "{est:?}");
}

#[test]
fn bessel_hitting_two_thirds() {
    for (d, lo, hi, ds) in [(3.0, 0.5, 2.0, 0.5), (2.0, 0.01, 10.0, 10f64.ln())] {
        let spec = gallery::bessel(d).unwrap();
        let chain = build_chain(&spec, 0, &Interval::closed(lo, hi).unwrap(), &cfg(ds, 1)).unwrap();
        assert_eq!(chain.len(), 4);
        let est = estimate_hitting(&chain, 1.0, lo, hi, &cfg(ds, 20_000)).unwrap();
        assert!((est.exact - 2.0 / 3.0).abs() < 1e-10);
        assert!((est.chain_exact - 2.0 / 3.0).abs() < 1e-10);
        assert!(est.z_score().abs() < 4.0, "{est:?}");
    }
}

#[test]
fn unreachable_window_is_refused() {
    let spec = gallery::bessel(3.0).unwrap();
    let e = build_chain(&spec, 0, &Interval::closed(0.0, 2.0).unwrap(), &cfg(0.1, 1)).unwrap_err();
    assert!(e.to_string().contains("shrink"));
}

#[test]
fn same_seed_same_answer_across_threads() {
    let spec = gallery::bessel(2.0).unwrap();
    let ds = 10f64.ln();
    let chain = build_chain(&spec, 0, &Interval::closed(0.01, 10.0).unwrap(), &cfg(ds, 1)).unwrap();
    let mut one = cfg(ds, 5_000);
    one.threads = Some(1);
    let mut four = one.clone();
    four.threads = Some(4);
    let a = estimate_hitting(&chain, 1.0, 0.01, 10.0, &one).unwrap();
    let b = estimate_hitting(&chain, 1.0, 0.01, 10.0, &four).unwrap();
    assert_eq!(hitting_csv_row("b2", ds, &a), hitting_csv_row("b2", ds, &b));
}

#[test]
fn reflecting_occupation_follows_speed() {
    let spec = gallery::reflecting_two_level(1.0, 2.0).unwrap();
    let chain = build_chain(&spec, 0, &Interval::closed(0.0, 1.0).unwrap(), &cfg(1.0 / 11.0, 1)).unwrap();
    assert_eq!(chain.left_row, BoundaryRow::Reflecting);
    assert_eq!(chain.len(), 12);
    let p = occupation_profile(&chain, None, 2_000_000, &cfg(1.0 / 11.0, 200)).unwrap();
    assert!((p.expected_fraction(|x| x > 0.5) - 2.0 / 3.0).abs() < 1e-12);
    let (m, se) = p.mass_fraction(|x| x > 0.5);
    assert!((m - 2.0 / 3.0).abs() < 4.0 * se, "{m} {se}");
    let total: f64 = p.fraction.iter().sum();
    assert!((total - 1.0).abs() < 1e-12);
}

#[test]
fn short_occupation_runs_are_not_biased() {
    let spec = gallery::reflecting_two_level(1.0, 2.0).unwrap();
    let c = cfg(1.0 / 21.0, 2_000);
    let chain = build_chain(&spec, 0, &Interval::closed(0.0, 1.0).unwrap(), &c).unwrap();
    let p = occupation_profile(&chain, None, 400_000, &c).unwrap();
    let (m, se) = p.mass_fraction(|x| x > 0.5);
    assert!((m - 2.0 / 3.0).abs() < 4.0 * se, "{m} {se}");
}

#[test]
fn traps_do_not_move() {
    let spec = gallery::cantor_gap_extension().unwrap();
    let t = trap_check(&spec, 0.25, 100, &SimConfig::default()).unwrap();
    assert!(t.is_trap && t.constant);
    let t = trap_check(&spec, 0.5, 100, &SimConfig::default()).unwrap();
    assert!(!t.is_trap && !t.constant);
}

#[test]
fn csv_uses_seventeen_digits() {
    let spec = gallery::absorbing_brownian_motion().unwrap();
    let chain = build_chain(&spec, 0, &Interval::closed(0.0, 1.0).unwrap(), &cfg(0.5, 1)).unwrap();
    let est = estimate_hitting(&chain, 0.5, 0.0, 1.0, &cfg(0.5, 10)).unwrap();
    let row = hitting_csv_row("bm", 0.5, &est);
    assert!(row.starts_with("bm,5.0000000000000000e-1,0.0000000000000000e0,"));
    assert_eq!(row.split(',').count(), HITTING_CSV_HEADER.split(',').count());
}
