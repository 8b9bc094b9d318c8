fn main() {
    std::process::exit(heller_core::cli::run(std::env::args_os()));
}
