fn main() {
    std::process::exit(normgraph::cli::main());
}
