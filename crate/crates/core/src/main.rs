fn main() {
    std::process::exit(qhj_spectra::cli::main());
}
