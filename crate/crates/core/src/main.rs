fn main() {
    std::process::exit(mdir::cli::run(std::env::args_os()));
}
