fn main() {
    std::process::exit(hsnf::cli::main());
}
