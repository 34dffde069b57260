use std::io::Write;
use std::process::ExitCode;

fn main() -> ExitCode {
    let mut stderr = String::new();
    let outcome = wigner_cli::run(std::env::args_os(), &mut stderr);
    print!("{}", outcome.stdout);
    let _ = std::io::stdout().flush();
    eprint!("{stderr}");
    ExitCode::from(outcome.code as u8)
}
