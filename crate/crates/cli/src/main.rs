fn main() {
    std::process::exit(depthlab_cli::run(std::env::args_os().collect()));
}
