fn main() {
    std::process::exit(spinorlab_cli::run(std::env::args_os()));
}
