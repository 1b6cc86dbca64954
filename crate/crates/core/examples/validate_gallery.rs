//! Validate the bundled systems and classify the ends of every effective interval.

use linear_diffusion::dirichlet::{boundary_classification, validate};
use linear_diffusion::gallery;

fn main() -> linear_diffusion::Result<()> {
    let systems = [
        ("absorbing brownian motion", gallery::absorbing_brownian_motion()?),
        ("unadapted open interval", gallery::unadapted_open_interval()?),
        ("bessel d=2", gallery::bessel(2.0)?),
        ("bessel d=3", gallery::bessel(3.0)?),
        ("split line", gallery::split_line_exp_recip()?),
        ("cantor gaps", gallery::cantor_gap_extension()?),
    ];
    for (name, spec) in &systems {
        let report = validate(spec);
        println!("== {name}: {}", if report.is_valid() { "valid" } else { "INVALID" });
        for n in 0..spec.intervals().len().min(3) {
            let j = spec.interval(n)?;
            let (l, r) = boundary_classification(spec, n)?;
            println!("  {}: left {} (s = {}), right {} (s = {})", j.interval, l.kind, l.scale_limit, r.kind, r.scale_limit);
        }
        if !report.is_valid() {
            print!("{}", report.to_text());
        }
    }
    Ok(())
}
