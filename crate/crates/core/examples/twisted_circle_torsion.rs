// Analytic torsion of circles with a unitary twist.

use std::error::Error;
use std::f64::consts::PI;

use phi_torsion::spectra::{Geometry, SpectralModel};
use phi_torsion::zeta::log_torsion;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for theta in [PI / 3.0, PI / 2.0, 2.0 * PI / 3.0, PI] {
        let want = (2.0 * (theta / 2.0).sin()).ln();
        for l in [1.0, 2.0 * PI, 10.0] {
            let r = log_torsion(&SpectralModel::build(&Geometry::circle(l, theta))?)?;
            println!(
                "θ = {theta:.4}, L = {l:<8.4}: log T = {:+.12} (closed form {want:+.12})",
                r.log_t
            );
        }
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
