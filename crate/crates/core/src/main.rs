fn main() -> std::process::ExitCode {
    goedelkit::cli::main()
}
