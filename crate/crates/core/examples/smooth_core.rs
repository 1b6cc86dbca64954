//! Decide whether smooth compactly supported functions form a core.

use linear_diffusion::gallery;
use linear_diffusion::smoothcore::is_special_standard_core;

fn main() -> linear_diffusion::Result<()> {
    let systems = [
        ("absorbing brownian motion", gallery::absorbing_brownian_motion()?),
        ("bessel d=2", gallery::bessel(2.0)?),
        ("split line", gallery::split_line_exp_recip()?),
        ("cantor gaps", gallery::cantor_gap_extension()?),
        ("cantor gaps, unit mass", gallery::cantor_gap_unit_mass()?),
        ("fat cantor gaps", gallery::fat_cantor_gap_extension()?),
        ("cantor augmented", gallery::cantor_augmented_scale()?),
    ];
    for (name, spec) in &systems {
        let v = is_special_standard_core(spec)?;
        println!(
            "{name:<26} core {:<13} smooth in domain: {:<5} condition 1: {:<5} condition 2: {}",
            v.answer.to_string(),
            v.smooth.contained,
            v.condition_one(),
            v.condition_two(),
        );
    }
    Ok(())
}
