fn main() {
    std::process::exit(smallball::cli::main_with_args(std::env::args_os()));
}
