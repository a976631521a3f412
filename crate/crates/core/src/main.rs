fn main() {
    std::process::exit(freeperiod::cli::run(std::env::args_os()));
}
