fn main() {
    std::process::exit(monogenic::cli::main_with_args(std::env::args_os()));
}
