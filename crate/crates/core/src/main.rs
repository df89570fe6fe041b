fn main() {
    std::process::exit(framekit::cli::main_with_args(std::env::args_os()));
}
