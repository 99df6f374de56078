fn main() {
    std::process::exit(whitney::run(std::env::args()));
}
