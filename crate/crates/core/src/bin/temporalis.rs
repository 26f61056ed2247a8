fn main() {
    std::process::exit(temporalis::cli::run(std::env::args_os()));
}
