fn main() {
    std::process::exit(phi_torsion::cli::main_with_args(std::env::args_os()));
}
