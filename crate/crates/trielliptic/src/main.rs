fn main() {
    std::process::exit(trielliptic::cli::run(std::env::args_os()));
}
