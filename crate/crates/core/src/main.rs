use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(wmk::cli::run(std::env::args_os()))
}
