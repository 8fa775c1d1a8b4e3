fn main() {
    std::process::exit(weyltoric::cli::run(std::env::args()));
}
