// Regularized integrals of polyhomogeneous samples and the change-of-variable rule.

use std::error::Error;

use phi_torsion::reg::{change_of_variable, regularized_integral, RegOptions};
use phi_torsion::verify::reg_corpus;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let opts = RegOptions::default();
    for (name, f) in reg_corpus() {
        let r = regularized_integral(&f, 1.0, opts)?;
        println!("⨍ {name:<24} = {:+.12} ± {:.1e}", r.value, r.error);
    }

    // 1/(1+x): log coefficient c₁ = 1 makes the rescaled integral pick up −log λ
    let (_, f) = reg_corpus().into_iter().nth(1).ok_or("corpus too short")?;
    let lambda = std::f64::consts::E;
    let cov = change_of_variable(&f, lambda, 1e-8, opts)?;
    println!(
        "λ = e: scaling formula {:+.12}, direct {:+.12}, c = {:?}",
        cov.value, cov.direct, cov.log_coeffs
    );
    assert!((cov.value - cov.direct).abs() < 1e-8);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
