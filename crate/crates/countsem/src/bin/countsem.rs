fn main() { std::process::exit(countsem::cli::run(std::env::args().skip(1))); }
