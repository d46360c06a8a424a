// Euclidean cone traces: scaling law and the spatial regularized integral.

use std::error::Error;

use phi_torsion::spectra::{cone_coefficient, euclidean_scaling_check, spatial_reg_integral};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for b in 1..=3 {
        for k in 0..=b + 1 {
            let s = spatial_reg_integral(b, k, 0.7)?;
            println!(
                "b = {b}, k = {k}: C = {:+.6}, ⨍ Tr_k dr = {:+.3e}",
                cone_coefficient(b, k)?,
                s.value
            );
        }
        let r = euclidean_scaling_check(b, 1.7, 0.4, 0.3, 2.0)?;
        println!("b = {b}: scaled {:.12}, expected {:.12}", r.scaled, r.expected);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
