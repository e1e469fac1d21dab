fn main() {
    std::process::exit(maxplus_martin::cli::main_with_args(std::env::args_os()));
}
