fn main() {
    std::process::exit(p2degen::cli::run(std::env::args_os()));
}
