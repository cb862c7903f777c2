fn main() {
    std::process::exit(erdos_straus::cli::run(std::env::args_os()));
}
