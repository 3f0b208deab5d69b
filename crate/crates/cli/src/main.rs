use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(kgscreen_cli::run_from(std::env::args_os()) as u8)
}
