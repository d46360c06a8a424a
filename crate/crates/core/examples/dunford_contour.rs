// Heat trace recovered from resolvent powers along a sector contour.

use std::error::Error;

use phi_torsion::spectra::{dunford_heat, ContourSpec, Geometry, SpectralModel};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let model = SpectralModel::build(&Geometry::truncated(&[(0.0, 1), (1.0, 2), (4.0, 2), (9.0, 2)]))?;
    let theta = 3.0 * std::f64::consts::FRAC_PI_4;
    for nu in 1..=3 {
        for t in [0.05, 0.5, 2.0] {
            let d = dunford_heat(&model, 0, &ContourSpec::new(theta, t, nu))?;
            let direct = model.heat_trace(0, t)?.value;
            println!(
                "ν = {nu}, t = {t:<4}: contour {:.12}  direct {:.12}  Im {:.1e}",
                d.value, direct, d.imaginary
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
