fn main() {
    std::process::exit(blaschke_atlas::cli::run(std::env::args_os()));
}
