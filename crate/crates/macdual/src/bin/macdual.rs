fn main() {
    std::process::exit(macdual::io::cli::run(std::env::args()));
}
