fn main() {
    std::process::exit(ddpoly_core::cli::run(std::env::args_os()));
}
