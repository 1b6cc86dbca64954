//! Closability of the energy `int u'^2 dnu` for a few reference measures.

use linear_diffusion::measures::{DensitySegment, Interval, MeasureSpec, Primitive};
use linear_diffusion::smoothcore::{hamza_closable, intervals_from_density, regular_set, HamzaDensity};

fn whole_line(p: Primitive) -> HamzaDensity {
    HamzaDensity::from_segments(vec![DensitySegment { support: Interval::real_line(), primitive: p }])
}

fn main() -> linear_diffusion::Result<()> {
    let cases = [
        ("x^2", whole_line(Primitive::Power { coef: 1.0, center: 0.0, exponent: 2.0 })),
        ("|x|^(1/2)", whole_line(Primitive::Power { coef: 1.0, center: 0.0, exponent: 0.5 })),
        ("1", whole_line(Primitive::Constant(1.0))),
        (
            "1_{x>0}",
            HamzaDensity::from_segments(vec![DensitySegment::constant(Interval::open(0.0, f64::INFINITY)?, 1.0)?]),
        ),
        ("lebesgue + delta_0", HamzaDensity::new(MeasureSpec::lebesgue(Interval::real_line()).with_atom(0.0, 1.0))),
    ];
    for (name, nu) in &cases {
        println!("== nu = {name}: {:?}", hamza_closable(nu)?);
        if let Ok(r) = regular_set(nu) {
            let parts: Vec<String> = r.iter().map(|j| j.to_string()).collect();
            println!("  regular set: {}", parts.join(" u "));
        }
        if let Ok(spec) = intervals_from_density(nu) {
            for j in spec.intervals() {
                println!("  effective interval {} with {}", j.interval, j.scale.describe());
            }
        }
    }
    Ok(())
}
