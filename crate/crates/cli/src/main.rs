fn main() {
    std::process::exit(sarcnn_cli::run(std::env::args_os()));
}
