fn main() {
    std::process::exit(relaylab::cli::main_with_args(std::env::args_os()));
}
