fn main() {
    std::process::exit(danvar::cli::run_main());
}
