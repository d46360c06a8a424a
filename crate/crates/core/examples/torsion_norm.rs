// Torsion norm on the determinant line of an untwisted circle.

use std::error::Error;
use std::f64::consts::PI;

use phi_torsion::spectra::{Geometry, SpectralModel};
use phi_torsion::zeta::{torsion_norm, DetLineElement, HarmonicRep};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for l in [1.0, 2.0 * PI, 10.0] {
        let model = SpectralModel::build(&Geometry::circle(l, 0.0))?;
        let mu = DetLineElement::new(vec![HarmonicRep::constant(0, 1.0), HarmonicRep::constant(1, 1.0 / l)]);
        let r = torsion_norm(&model, &mu)?;
        println!(
            "L = {l:<8.4} T = {:.10}  ‖μ‖ = {:.10}  T·‖μ‖ = {:.12}",
            r.torsion, r.l2_norm, r.norm
        );
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
