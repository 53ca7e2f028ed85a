fn main() {
    std::process::exit(susy_trm_cli::run(std::env::args_os()));
}
