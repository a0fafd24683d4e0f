fn main() {
    std::process::exit(sigvar::cli::run(std::env::args_os()));
}
