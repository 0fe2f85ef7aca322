fn main() {
    dmetric::cli::main();
}
