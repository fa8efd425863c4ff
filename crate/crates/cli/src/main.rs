fn main() {
    std::process::exit(subbound_cli::run(std::env::args_os()));
}
