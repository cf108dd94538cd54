fn main() {
    std::process::exit(sispace_cli::run(std::env::args_os()));
}
