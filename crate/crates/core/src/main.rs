use std::process::ExitCode;

fn main() -> ExitCode {
    rectcover::cli::main_with_args(std::env::args_os())
}
