use clap::error::ErrorKind;
use clap::Parser;
use stagwalk_cli::args::Cli;
use stagwalk_cli::{commands, EXIT_OK, EXIT_USAGE};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    if let Err(failure) = commands::run(cli) {
        eprintln!("{failure}");
        std::process::exit(failure.exit_code());
    }
}
