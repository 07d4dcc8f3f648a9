use std::io;
use std::process::ExitCode;

use primesrl::cli;
use primesrl::report::Style;

fn main() -> ExitCode {
    let code = cli::run(
        std::env::args_os(),
        Style::detect(),
        &mut io::stdout().lock(),
        &mut io::stderr().lock(),
    );
    ExitCode::from(code as u8)
}
