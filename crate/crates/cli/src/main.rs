use std::io::Write;
use std::process::ExitCode;

use clap::error::ErrorKind;

fn main() -> ExitCode {
    match partcat_cli::run_args(std::env::args_os()) {
        Ok(r) => {
            emit(&r.text);
            ExitCode::from(r.outcome.exit_code() as u8)
        }
        Err(e) => {
            if let Some(c) = e.downcast_ref::<clap::Error>() {
                if matches!(c.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                    emit(&c.to_string());
                    return ExitCode::SUCCESS;
                }
                eprint!("{c}");
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(1)
        }
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}
