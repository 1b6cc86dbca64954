//! Cantor sets, their uniform measures and the gap densities built on them.

use linear_diffusion::gallery;
use linear_diffusion::measures::{CantorComponent, CantorSet, GapDensity, Interval, MeasureSpec};

fn main() -> linear_diffusion::Result<()> {
    let k = CantorSet::standard(0.0, 1.0)?;
    println!("{}: lebesgue measure {}", k.describe(), k.lebesgue_measure());
    for x in [0.25, 0.5, 0.75, 1.0 / 3.0] {
        println!("  F({x:.4}) = {:.6}, in set: {}", k.uniform_cdf(x, 40), k.contains(x, 40));
    }
    println!("  gaps up to generation 2: {:?}", k.gaps(2));

    let fat = gallery::fat_cantor_set()?;
    println!("{}: lebesgue measure {}", fat.describe(), fat.lebesgue_measure());

    let mu = MeasureSpec::lebesgue(Interval::closed(0.0, 1.0)?).with_cantor(CantorComponent::new(k.clone(), 1.0)?);
    let (ac, sing) = mu.lebesgue_decompose();
    println!("lebesgue + cantor: ac mass {}, singular mass {}", ac.mass(&Interval::closed(0.0, 1.0)?), sing.mass(&Interval::closed(0.0, 1.0)?));

    // |g|^-1 on each gap g: every gap gets mass 1, so the total diverges.
    let g = GapDensity::new(k.clone(), 1.0, -1.0)?;
    println!("gap density |g|^-1: mass on (0, 1) = {}", g.mass_between(0.0, 1.0));
    let g = GapDensity::new(k, 1.0, 0.0)?;
    println!("gap density 1: mass on (0, 1) = {}", g.mass_between(0.0, 1.0));
    Ok(())
}
