fn main() { std::process::exit(chaoslab::cli::run(std::env::args_os())); }
