fn main() {
    std::process::exit(scimask::cli::run(std::env::args_os()));
}
