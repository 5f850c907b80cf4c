fn main() {
    std::process::exit(son2::cli::main());
}
