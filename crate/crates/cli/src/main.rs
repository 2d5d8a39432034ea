fn main() -> std::process::ExitCode {
    cpccms_cli::main_with(std::env::args_os())
}
