mod args;
mod config;
mod grid;
mod report;
mod run;

use std::fmt;
use std::process::ExitCode;

use clap::error::ErrorKind;

/// Invalid flags, config file or catalog: exit status 1.
#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

/// Some sweep rows carry an error code; the CSV is still written.
#[derive(Debug)]
pub struct RowErrors {
    pub count: usize,
    pub code: &'static str,
}

impl fmt::Display for RowErrors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} row(s) failed; first failure: {}", self.count, self.code)
    }
}

impl std::error::Error for RowErrors {}

fn error_line(code: &str, message: &str) {
    eprintln!("error code={code} message={message:?}");
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();

    let cli = match config::parse_args(std::env::args_os().collect()) {
        Ok(cli) => cli,
        Err(e) => {
            if let Some(c) = e.downcast_ref::<clap::Error>() {
                let _ = c.print();
                return match c.kind() {
                    ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                    _ => ExitCode::from(1),
                };
            }
            error_line("invalid_config", &e.to_string());
            return ExitCode::from(1);
        }
    };

    match run::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let Some(c) = e.downcast_ref::<ConfigError>() {
                error_line("invalid_config", &c.0);
                ExitCode::from(1)
            } else if let Some(r) = e.downcast_ref::<RowErrors>() {
                error_line(r.code, &r.to_string());
                ExitCode::from(2)
            } else if let Some(c) = e.downcast_ref::<cqed_core::Error>() {
                error_line(c.code(), &c.to_string());
                ExitCode::from(2)
            } else {
                error_line("io", &format!("{e:#}"));
                ExitCode::from(2)
            }
        }
    }
}
