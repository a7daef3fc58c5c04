fn main() {
    std::process::exit(ears_cli::run(std::env::args_os()));
}
