//! Time spent by a reflecting walk in each cell follows the speed measure.

use linear_diffusion::gallery;
use linear_diffusion::measures::Interval;
use linear_diffusion::simulate::{build_chain, occupation_profile, SimConfig};

fn main() -> linear_diffusion::Result<()> {
    let spec = gallery::reflecting_two_level(1.0, 2.0)?;
    let cfg = SimConfig { delta_s: Some(1.0 / 21.0), n_paths: 100, seed: 3, ..SimConfig::default() };
    let chain = build_chain(&spec, 0, &Interval::closed(0.0, 1.0)?, &cfg)?;
    let profile = occupation_profile(&chain, None, 2_000_000, &cfg)?;
    let (m, se) = profile.mass_fraction(|x| x > 0.5);
    println!("fraction of time in (1/2, 1]: {m:.4} +- {se:.4}, speed measure says {:.4}", profile.expected_fraction(|x| x > 0.5));
    for (x, (f, e)) in profile.points.iter().zip(profile.fraction.iter().zip(&profile.expected)).step_by(4) {
        println!("  x = {x:.3}  observed {f:.4}  expected {e:.4}");
    }
    Ok(())
}
