fn main() {
    std::process::exit(projsymp::cli::main_with_args(std::env::args_os()));
}
