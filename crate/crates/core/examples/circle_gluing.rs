// Gluing two intervals into a circle: the norm identity and determinant oracles.

use std::error::Error;

use phi_torsion::glue::{builtin_sequences, circle_gluing_check, determinant_oracles, theta_dims, ThetaInputs};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    for l in [1.0, std::f64::consts::PI, 10.0] {
        let g = circle_gluing_check(l)?;
        println!(
            "L = {l:<7.4}: ‖Φ(α⊗β)‖ = {:.12}, 2^(−χ/2)‖α‖‖β‖ = {:.12}, glued {:?}",
            g.left, g.right, g.glued
        );
        let d = determinant_oracles(l)?;
        println!(
            "  det′Δ(S¹) = {:.10} vs {:.10}; det Δ_D = {:.10} vs {:.10}",
            d.circle.0, d.circle.1, d.dirichlet.0, d.dirichlet.1
        );
    }
    for seq in builtin_sequences(1.0)? {
        println!("{}: alternating sum {}", seq.label, seq.alternating_sum());
    }
    let dims = theta_dims(&ThetaInputs {
        theta: 0.5,
        m: 3,
        rank: 1,
        h0_theta: None,
        hm_theta: 1,
        rel_n: vec![0, 1, 0, 0],
        rel_k: vec![0, 0, 1, 0],
        boundary: vec![1, 0, 1],
    })?;
    println!("θ-cohomology: {dims:?}");
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
