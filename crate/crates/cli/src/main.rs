use std::io;
use std::process::ExitCode;

use clap::Parser;
use rigidity_cli::{run, Cli, Io};

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = run(
        &cli,
        Io {
            stdin: &mut io::stdin().lock(),
            stdout: &mut io::stdout().lock(),
            stderr: &mut io::stderr().lock(),
        },
    );
    ExitCode::from(code as u8)
}
