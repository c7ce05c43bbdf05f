use std::process::ExitCode;

use stabnorm::{dispatch, parse_config, Parsed};

fn main() -> ExitCode {
    let result = parse_config(std::env::args_os()).and_then(|parsed| match parsed {
        Parsed::Info(text) => {
            print!("{text}");
            Ok(())
        }
        Parsed::Run(config) => {
            let report = dispatch(&config)?;
            println!("{} -> {}", report.summary, report.path.display());
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("stabnorm: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
