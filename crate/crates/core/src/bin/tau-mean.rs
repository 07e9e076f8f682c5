fn main() {
    std::process::exit(tau_mean::cli::run(std::env::args_os()));
}
