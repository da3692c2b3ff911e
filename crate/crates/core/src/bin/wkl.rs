fn main() { std::process::exit(wkl::cli::dispatch(std::env::args_os().collect())); }
