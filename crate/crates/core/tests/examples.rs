//! Every example under `examples/` runs to completion.

mod acceptance_suite {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/acceptance_suite.rs"));
}

#[test]
fn acceptance_suite_runs() {
    acceptance_suite::run_example().expect("acceptance_suite should run");
}

mod circle_gluing {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/circle_gluing.rs"));
}

#[test]
fn circle_gluing_runs() {
    circle_gluing::run_example().expect("circle_gluing should run");
}

mod cone_traces {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cone_traces.rs"));
}

#[test]
fn cone_traces_runs() {
    cone_traces::run_example().expect("cone_traces should run");
}

mod dunford_contour {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/dunford_contour.rs"));
}

#[test]
fn dunford_contour_runs() {
    dunford_contour::run_example().expect("dunford_contour should run");
}

mod heat_traces {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/heat_traces.rs"));
}

#[test]
fn heat_traces_runs() {
    heat_traces::run_example().expect("heat_traces should run");
}

mod index_sets {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/index_sets.rs"));
}

#[test]
fn index_sets_runs() {
    index_sets::run_example().expect("index_sets should run");
}

mod regularized_integrals {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/regularized_integrals.rs"
    ));
}

#[test]
fn regularized_integrals_runs() {
    regularized_integrals::run_example().expect("regularized_integrals should run");
}

mod torsion_norm {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/torsion_norm.rs"));
}

#[test]
fn torsion_norm_runs() {
    torsion_norm::run_example().expect("torsion_norm should run");
}

mod twisted_circle_torsion {
    include!(concat!(
        env!("CARGO_MANIFEST_DIR"),
        "/examples/twisted_circle_torsion.rs"
    ));
}

#[test]
fn twisted_circle_torsion_runs() {
    twisted_circle_torsion::run_example().expect("twisted_circle_torsion should run");
}

mod wedge_torsion {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/wedge_torsion.rs"));
}

#[test]
fn wedge_torsion_runs() {
    wedge_torsion::run_example().expect("wedge_torsion should run");
}

mod zeta_functions {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/zeta_functions.rs"));
}

#[test]
fn zeta_functions_runs() {
    zeta_functions::run_example().expect("zeta_functions should run");
}
