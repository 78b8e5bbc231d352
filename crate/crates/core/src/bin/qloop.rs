fn main() {
    std::process::exit(qloop::cli::cli_main(std::env::args_os()));
}
