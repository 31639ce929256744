fn main() {
    std::process::exit(lde::cli::run(std::env::args_os()));
}
