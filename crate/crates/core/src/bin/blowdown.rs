fn main() {
    std::process::exit(blowdown::cli::run(std::env::args_os()));
}
