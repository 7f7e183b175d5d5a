fn main() { std::process::exit(vlgrasp::cli::main()); }
