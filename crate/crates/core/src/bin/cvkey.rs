fn main() {
    std::process::exit(cvkey::cli::run(std::env::args_os()));
}
