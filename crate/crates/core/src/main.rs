fn main() {
    std::process::exit(concavex::cli::main_with_args(std::env::args_os()));
}
