fn main() {
    std::process::exit(fsdouble::cli::run(std::env::args_os()));
}
