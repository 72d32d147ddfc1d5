fn main() {
    std::process::exit(chi_lie::cli::run(std::env::args_os()));
}
