fn main() {
    std::process::exit(homco::cli::run(std::env::args_os()));
}
