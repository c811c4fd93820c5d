fn main() {
    std::process::exit(ballcheck::cli::run());
}
