use clap::Parser;

use betti::cli::{run, Cli};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // help and version exit cleanly; anything else is a bad config
            let code = if err.use_stderr() { 4 } else { 0 };
            err.print().expect("failed to write clap diagnostics");
            std::process::exit(code);
        }
    };
    if let Err(err) = run(&cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
