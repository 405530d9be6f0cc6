fn main() -> std::process::ExitCode {
    ellipvol::runner::cli::main()
}
