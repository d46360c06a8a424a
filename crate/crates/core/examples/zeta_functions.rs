// Meromorphic zeta continuation: values, poles and the jet at zero.

use std::error::Error;

use phi_torsion::spectra::{Geometry, SpectralModel};
use phi_torsion::zeta::zeta_continue;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let torus = SpectralModel::build(&Geometry::torus(&[1.0, 1.3]))?;
    let z = zeta_continue(&torus, 0)?;
    for s in [3.0, 2.0, 0.5, -0.5] {
        let v = z.eval(s)?;
        println!("ζ₀({s:+}) = {:+.12} ± {:.1e}", v.value, v.error);
    }
    let at0 = z.at_zero()?;
    println!("ζ₀(0) = {:+.12}, ζ₀′(0) = {:+.12}", at0.value, at0.derivative);
    println!("{} poles", z.poles().len());

    let circle = SpectralModel::build(&Geometry::circle(2.0 * std::f64::consts::PI, 0.0))?;
    let at0 = zeta_continue(&circle, 0)?.at_zero()?;
    println!(
        "S¹ of length 2π: ζ(0) = {:+.12}, ζ′(0) = {:+.12}",
        at0.value, at0.derivative
    );
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
