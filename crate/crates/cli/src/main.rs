use std::process::ExitCode;

fn main() -> ExitCode {
    bf_twostage_cli::main_with_args(std::env::args_os())
}
