fn main() {
    std::process::exit(photonbox_cli::main_with_args(std::env::args_os()));
}
