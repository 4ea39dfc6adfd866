fn main() {
    std::process::exit(gridcover::cli::run(std::env::args_os()));
}
