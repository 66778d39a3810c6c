fn main() {
    std::process::exit(auxz::main_with_args(std::env::args_os()));
}
