fn main() {
    std::process::exit(wsc::cli::run(std::env::args_os()));
}
