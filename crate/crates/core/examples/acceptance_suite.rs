// Runs every acceptance criterion and prints one line each.

use std::error::Error;

use phi_torsion::verify::run_all;

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let reports = run_all();
    for r in &reports {
        println!("{}", r.line());
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    if failed > 0 {
        return Err(format!("{failed} criteria failed").into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
