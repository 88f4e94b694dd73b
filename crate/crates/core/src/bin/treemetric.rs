fn main() {
    std::process::exit(treemetric::cli::run(std::env::args_os()));
}
