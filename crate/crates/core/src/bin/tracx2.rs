fn main() {
    std::process::exit(tracx2::cli::main());
}
