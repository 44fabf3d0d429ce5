fn main() {
    std::process::exit(coauthnet::cli::main_with_args(std::env::args_os()));
}
