fn main() {
    std::process::exit(sdmap::cli::run(std::env::args_os()));
}
