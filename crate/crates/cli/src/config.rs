//! Flat `key=value` config files. Keys are long flag names without the leading dashes.
//! Values from the file fill in only what the command line left unset.

use std::ffi::OsString;
use std::path::Path;

use clap::parser::ValueSource;
use clap::{ArgMatches, CommandFactory, FromArgMatches};

use crate::args::Cli;
use crate::ConfigError;

/// Pairs that cannot both be given; a command-line flag suppresses its partner from the file.
const EXCLUSIVE: &[(&str, &str)] = &[
    ("f", "f-grid"),
    ("alpha", "alpha-grid"),
    ("delta", "delta-grid"),
    ("molecule", "alpha"),
    ("molecule", "alpha-grid"),
    ("molecule", "omega-c"),
];

pub fn read(path: &Path) -> Result<Vec<(String, String)>, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("config {}: {e}", path.display())))?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| ConfigError(format!("config line {}: expected key=value", i + 1)))?;
        let k = k.trim().trim_start_matches("--").to_string();
        if k.is_empty() {
            return Err(ConfigError(format!("config line {}: empty key", i + 1)));
        }
        out.push((k, v.trim().to_string()));
    }
    Ok(out)
}

fn on_command_line(m: &ArgMatches, key: &str) -> bool {
    let id = key.replace('-', "_");
    matches!(m.try_contains_id(&id), Ok(true)) && m.value_source(&id) == Some(ValueSource::CommandLine)
}

/// Parse `argv`, then re-parse with entries from `--config` appended where the command line
/// is silent.
pub fn parse_args(mut argv: Vec<OsString>) -> anyhow::Result<Cli> {
    let matches = Cli::command().try_get_matches_from(&argv)?;
    let cli = Cli::from_arg_matches(&matches)?;
    let Some(path) = cli.global.config.clone() else {
        return Ok(cli);
    };
    let entries = read(&path)?;
    let (_, sub) = matches.subcommand().expect("subcommand is required");
    for (key, value) in entries {
        if key == "config" {
            return Err(ConfigError("config files cannot include other config files".into()).into());
        }
        let id = key.replace('-', "_");
        if sub.try_contains_id(&id).is_err() {
            return Err(ConfigError(format!("config key '{key}' is not an option of this command")).into());
        }
        if on_command_line(sub, &key) {
            continue;
        }
        let blocked = EXCLUSIVE.iter().any(|&(a, b)| {
            (a == key && on_command_line(sub, b)) || (b == key && on_command_line(sub, a))
        });
        if blocked {
            continue;
        }
        match value.as_str() {
            "true" => argv.push(format!("--{key}").into()),
            "false" => {}
            _ => argv.push(format!("--{key}={value}").into()),
        }
    }
    let matches = Cli::command().try_get_matches_from(&argv)?;
    Ok(Cli::from_arg_matches(&matches)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_and_comments() {
        let p = parse("# comment\n\nf = 0.05\n--alpha=1\ndelta-grid=-1:1:3\n").unwrap();
        assert_eq!(
            p,
            vec![
                ("f".into(), "0.05".into()),
                ("alpha".into(), "1".into()),
                ("delta-grid".into(), "-1:1:3".into())
            ]
        );
        assert!(parse("novalue\n").is_err());
        assert!(parse("=3\n").is_err());
    }
}
