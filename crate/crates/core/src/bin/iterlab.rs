fn main() {
    std::process::exit(iterlab::cli::run(std::env::args_os()));
}
