use std::process::ExitCode;

fn main() -> ExitCode {
    let outcome = shellres::cli::run_cli(std::env::args());
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code as u8)
}
