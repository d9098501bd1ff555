fn main() {
    std::process::exit(sspflow::cli::main());
}
