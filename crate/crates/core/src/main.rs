use std::io;
use std::process::ExitCode;

fn main() -> ExitCode {
    let code = weighted_torsion::cli::run(std::env::args_os(), &mut io::stdin(), &mut io::stdout(), &mut io::stderr());
    ExitCode::from(code as u8)
}
