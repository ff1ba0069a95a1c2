fn main() {
    std::process::exit(sdlattice::cli::run(std::env::args_os()));
}
