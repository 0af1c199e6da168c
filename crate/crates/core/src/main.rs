fn main() {
    std::process::exit(subspace_angles::cli::run(std::env::args_os()));
}
