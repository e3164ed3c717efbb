fn main() {
    std::process::exit(eda::cli::main(std::env::args_os()));
}
