use std::process::ExitCode;

fn main() -> ExitCode {
    ExitCode::from(thermal_jc_cli::run(std::env::args_os()))
}
