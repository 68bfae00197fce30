fn main() {
    std::process::exit(cashift_cli::run(std::env::args_os()));
}
