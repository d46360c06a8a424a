// Heat traces of model spectra and their fitted short-time expansions.

use std::error::Error;

use phi_torsion::spectra::{product_model, short_time_expansion, Boundary, Geometry, SpectralModel};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let circle = SpectralModel::build(&Geometry::circle(3.0, 0.0))?;
    for t in [0.01, 0.1, 1.0, 10.0] {
        let h = circle.heat_trace(0, t)?;
        println!("Tr e^(-tΔ₀) on {} at t = {t:<5}: {:.12}", circle.label(), h.value);
    }

    let fit = short_time_expansion(&circle, 0, 4)?;
    println!("short-time fit, rms residual {:.1e}", fit.residual_rms);
    for term in &fit.exact {
        println!(
            "  t^{}  exact {:+.10}  fitted {:+.10}",
            term.alpha,
            term.coeff,
            fit.coeff(term.alpha)
        );
    }

    let torus = SpectralModel::build(&Geometry::torus(&[1.0, 2.0]))?;
    let strip = product_model(
        &circle,
        &SpectralModel::build(&Geometry::interval(1.0, Boundary::Absolute))?,
    )?;
    for m in [&torus, &strip] {
        let chi: f64 = (0..=m.dim())
            .map(|k| {
                let v = m.heat_trace(k, 0.5).map(|e| e.value).unwrap_or(f64::NAN);
                if k % 2 == 0 {
                    v
                } else {
                    -v
                }
            })
            .sum();
        println!("{}: supertrace at t = 0.5 is {chi:+.10}, χ = {}", m.label(), m.chi());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
