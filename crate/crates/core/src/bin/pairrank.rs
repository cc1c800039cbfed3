fn main() {
    std::process::exit(pairrank::cli::run_command(std::env::args_os()));
}
