use std::io::{self, Write};
use std::process::ExitCode;

fn main() -> ExitCode {
    let stdout = io::stdout();
    let mut out = io::BufWriter::new(stdout.lock());
    let code = gmrk_cli::run(std::env::args_os(), &mut out, &mut io::stderr());
    // a closed pipe is not worth a panic
    let code = if out.flush().is_err() && code == gmrk_cli::EXIT_OK { gmrk_cli::EXIT_USAGE } else { code };
    ExitCode::from(code as u8)
}
