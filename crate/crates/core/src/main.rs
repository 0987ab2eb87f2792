fn main() -> std::process::ExitCode {
    entbroadcast::cli::main()
}
