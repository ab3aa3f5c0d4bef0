fn main() -> std::process::ExitCode {
    simplicial_resistance::cli::main()
}
