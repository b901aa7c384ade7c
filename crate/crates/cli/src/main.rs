fn main() {
    std::process::exit(qwalk_cli::run_from_args(std::env::args_os()));
}
