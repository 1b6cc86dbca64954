//! Merge scale-connected effective intervals into the smallest system whose
//! smooth functions form a core.

use linear_diffusion::gallery;
use linear_diffusion::smoothcore::{cinf_merge, is_special_standard_core};

fn main() -> linear_diffusion::Result<()> {
    for (name, spec) in [
        ("split line", gallery::split_line_exp_recip()?),
        ("cantor gaps, unit mass", gallery::cantor_gap_unit_mass()?),
    ] {
        let m = cinf_merge(&spec)?;
        println!("== {name}: {} class(es)", m.class_count());
        print!("{}", m.to_text());
        let after = is_special_standard_core(&m.spec)?;
        println!("core after merge: {}", after.answer);
    }
    Ok(())
}
