//! Hitting probabilities for Bessel processes: the scale ratio against a
//! random walk on a grid uniform in scale.

use linear_diffusion::dirichlet::hitting_probability;
use linear_diffusion::gallery;
use linear_diffusion::measures::Interval;
use linear_diffusion::simulate::{build_chain, estimate_hitting, SimConfig};

fn main() -> linear_diffusion::Result<()> {
    // Spacing in scale units chosen so the start 1 is a grid point.
    for (d, lo, hi, ds) in [(2.0, 0.01, 10.0, 10f64.ln() / 10.0), (3.0, 0.5, 2.0, 0.05)] {
        let spec = gallery::bessel(d)?;
        let exact = hitting_probability(&spec, 1.0, lo, hi)?;
        let cfg = SimConfig { delta_s: Some(ds), n_paths: 20_000, seed: 10 + d as u64, ..SimConfig::default() };
        let chain = build_chain(&spec, 0, &Interval::closed(lo, hi)?, &cfg)?;
        let est = estimate_hitting(&chain, 1.0, lo, hi, &cfg)?;
        println!(
            "d={d}: P_1(hit {hi} before {lo}) exact {exact:.6}, chain {:.6}, walk {:.4} +- {:.4} (z = {:+.2}, {} grid points)",
            est.chain_exact,
            est.estimate,
            est.se,
            est.z_score(),
            chain.len()
        );
    }

    // Shrinking windows around the unreachable origin for d=3.
    let spec = gallery::bessel(3.0)?;
    for eps in [0.1, 0.01, 0.001] {
        println!("d=3: P_1(hit 2 before {eps}) = {:.6}", hitting_probability(&spec, 1.0, eps, 2.0)?);
    }
    Ok(())
}
