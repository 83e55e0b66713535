fn main() {
    std::process::exit(sloshing::cli::main_with_args(std::env::args_os()));
}
