// Torsion of a cone wedge `C(B) × F` over an even-dimensional fibre.

use std::error::Error;

use phi_torsion::spectra::{ConeTraceForm, Geometry, SpectralModel};
use phi_torsion::zeta::{even_dim_vanishing, wedge_torsion};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let t2 = SpectralModel::build(&Geometry::torus(&[1.0, 1.4]))?;
    let r = even_dim_vanishing(&t2, &[2.0, 3.0])?;
    println!("T²: max |Σ(−1)^j j ζ_j| = {:.2e}", r.max_residual());

    for b in [1, 2] {
        let w = wedge_torsion(&ConeTraceForm::flat(b)?, &t2)?;
        println!(
            "flat cone b = {b} × T²: symbolic {}, numeric {:+.2e}",
            w.symbolic.map_or("n/a".to_string(), |q| q.to_string()),
            w.numeric
        );
    }

    let cone = ConeTraceForm::synthetic(1, vec![0.7, -1.1, 0.4], vec![vec![0.3, 0.05], vec![-0.2], vec![]])?;
    let w = wedge_torsion(&cone, &t2)?;
    println!("synthetic cone × T²: numeric {:+.2e}", w.numeric);
    for (k, d) in w.per_degree.iter().enumerate() {
        println!("  ζ′_{k}(0) = {d:+.10}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
