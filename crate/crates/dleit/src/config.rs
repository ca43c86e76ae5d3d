//! `key = value` config files, merged into the argument list so that the
//! command line takes precedence.
//!
//! Keys are long flag names without the dashes. Blank lines and lines
//! starting with `#` are ignored.

use std::ffi::OsString;
use std::fs;
use std::path::Path;

use crate::error::{CliError, CliResult};

const SUBCOMMANDS: [&str; 6] = ["steady", "phase-diagram", "jump", "apm", "propagate", "amplify-sweep"];
const GLOBAL_VALUE_FLAGS: [&str; 4] = ["--out", "--format", "--threads", "--config"];

pub fn parse_config(text: &str) -> CliResult<Vec<(String, String)>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::Config(format!("config line {}: expected `key = value`", i + 1)));
        };
        let key = key.trim();
        if key.is_empty() || key.starts_with('-') || key.contains(char::is_whitespace) {
            return Err(CliError::Config(format!("config line {}: bad key `{key}`", i + 1)));
        }
        if key == "config" {
            return Err(CliError::Config("config files cannot include other config files".into()));
        }
        let value = value.trim();
        let value = value
            .strip_prefix('"')
            .and_then(|v| v.strip_suffix('"'))
            .unwrap_or(value);
        out.push((key.to_string(), value.to_string()));
    }
    Ok(out)
}

fn config_path(argv: &[OsString]) -> Option<OsString> {
    let mut it = argv.iter().skip(1);
    while let Some(arg) = it.next() {
        let s = arg.to_string_lossy();
        if s == "--config" {
            return it.next().cloned();
        }
        if let Some(v) = s.strip_prefix("--config=") {
            return Some(v.into());
        }
    }
    None
}

fn subcommand_index(argv: &[OsString]) -> Option<usize> {
    let mut i = 1;
    while i < argv.len() {
        let s = argv[i].to_string_lossy();
        if SUBCOMMANDS.contains(&s.as_ref()) {
            return Some(i);
        }
        i += if GLOBAL_VALUE_FLAGS.contains(&s.as_ref()) { 2 } else { 1 };
    }
    None
}

/// Inserts the config file's options right after the subcommand name.
/// Later occurrences of a flag override earlier ones, so explicit flags
/// beat file entries.
pub fn expand_args(argv: Vec<OsString>) -> CliResult<Vec<OsString>> {
    let Some(path) = config_path(&argv) else {
        return Ok(argv);
    };
    let Some(at) = subcommand_index(&argv) else {
        return Ok(argv);
    };
    let text = fs::read_to_string(Path::new(&path))?;
    let entries = parse_config(&text)?;
    let mut out = argv[..=at].to_vec();
    for (k, v) in entries {
        out.push(format!("--{k}").into());
        out.push(v.into());
    }
    out.extend_from_slice(&argv[at + 1..]);
    Ok(out)
}
