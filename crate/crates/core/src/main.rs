fn main() {
    std::process::exit(bibennett::cli::main_with_args(std::env::args_os()));
}
