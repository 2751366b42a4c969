use std::process::ExitCode;

fn main() -> ExitCode {
    tinbl::cli::run()
}
