fn main() {
    std::process::exit(wavedesign_cli::run(std::env::args_os()));
}
