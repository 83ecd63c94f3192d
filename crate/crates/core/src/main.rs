use std::process::ExitCode;

fn main() -> ExitCode {
    continuants::cli::run_with_args(std::env::args_os())
}
