// Index-set algebra: normalization, extended unions, pushforward and face bounds.

use std::error::Error;

use phi_torsion::index_set::{heat_trace_bounds, pushforward_triple, resolvent_power_bounds, IndexSet, IndexTriple};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let e: IndexSet = "{(0,0), (1,0), (-1/2,1)}".parse()?;
    let f: IndexSet = "{(0,0)}".parse()?;
    println!("E       = {e}");
    println!("E ∪̄ F   = {}", e.extended_union(&f));
    println!("E + F   = {}", e.minkowski_sum(&f));
    assert_eq!(f.extended_union(&f).to_string(), "{(0,1)}; cutoff=10");

    let smooth = IndexSet::starting_at(0.into());
    let left = IndexTriple::new(smooth.clone(), smooth.clone(), IndexSet::empty());
    let pushed = pushforward_triple(&left, &IndexTriple::cutoff_indicator());
    println!(
        "pushforward: e10 = {}, e11 = {}, e01 = {}",
        pushed.e10, pushed.e11, pushed.e01
    );

    for (face, bound) in resolvent_power_bounds(2, 3)? {
        println!("resolvent ν=2 b=3  {:4} {bound}", face.label());
    }
    for (face, bound) in heat_trace_bounds(2, 3)? {
        println!("heat trace ν=2 b=3 {:4} {bound}", face.label());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
