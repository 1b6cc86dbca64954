//! Energy of piecewise-linear test functions and domain membership.

use linear_diffusion::dirichlet::{energy, in_domain, DiffusionSpec, TestFunction};
use linear_diffusion::gallery;
use linear_diffusion::measures::{Interval, MeasureSpec};
use linear_diffusion::scale::ScaleFunction;

fn main() -> linear_diffusion::Result<()> {
    let bm = gallery::absorbing_brownian_motion()?;
    let tent = TestFunction::from_knots(&bm, &[(0.0, 0.0), (0.5, 1.0), (1.0, 0.0)])?;
    let e = energy(&bm, &tent)?;
    println!("tent on (0,1): form {} killing {} total {}", e.form, e.killing, e.total());
    println!("  in domain: {}", in_domain(&bm, &tent)?.member);

    let clamped = tent.clamped(&bm, 0.0, 0.5)?;
    println!("  clamped at 1/2: total {}", energy(&bm, &clamped)?.total());

    // A function that does not vanish at an absorbing end is outside the domain.
    let ramp = TestFunction::from_knots(&bm, &[(0.0, 0.0), (1.0, 1.0)])?;
    let check = in_domain(&bm, &ramp)?;
    println!("ramp: member {} {:?}", check.member, check.reasons);

    // Same tent with killing: an atom of mass 2 at 1/2 adds 2 * u(1/2)^2.
    let unit = Interval::open(0.0, 1.0)?;
    let killed = DiffusionSpec::with_lebesgue_speed(unit)
        .with_interval(ScaleFunction::natural(unit)?)
        .with_killing(MeasureSpec::zero(unit).with_atom(0.5, 2.0));
    let tent = TestFunction::from_knots(&killed, &[(0.0, 0.0), (0.5, 1.0), (1.0, 0.0)])?;
    let e = energy(&killed, &tent)?;
    println!("with killing atom: form {} killing {} exact {}", e.form, e.killing, e.killing_exact);
    Ok(())
}
