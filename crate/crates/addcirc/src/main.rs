fn main() {
    std::process::exit(addcirc::cli::run());
}
