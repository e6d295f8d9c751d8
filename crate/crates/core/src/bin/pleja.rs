fn main() {
    std::process::exit(pleja::cli::main_with_args(std::env::args_os()));
}
