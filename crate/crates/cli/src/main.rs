use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use seshadri::args::Cli;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match seshadri::run(&cli) {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            if let Err(e) = stdout.write_all(out.stdout.as_bytes()).and_then(|_| stdout.flush()) {
                eprintln!("error: {e}");
                return ExitCode::from(3);
            }
            eprint!("{}", out.stderr);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
