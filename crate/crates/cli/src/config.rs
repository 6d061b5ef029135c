//! `key=value` configuration files.
//!
//! Each entry becomes a `--key value` argument placed before the arguments
//! typed on the command line, so flags given explicitly win.

use std::fs;
use std::path::Path;

/// Keys whose value is a switch rather than an argument.
const SWITCHES: [&str; 1] = ["timing"];

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Read {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}:{line}: expected key=value, found `{text}`")]
    Syntax { path: String, line: usize, text: String },
    #[error("{path}:{line}: `{key}` expects true or false, found `{value}`")]
    Switch {
        path: String,
        line: usize,
        key: String,
        value: String,
    },
    #[error("{path}:{line}: `config` cannot be nested")]
    Nested { path: String, line: usize },
}

/// Command-line arguments equivalent to the file's entries.
pub fn config_args(path: &Path) -> Result<Vec<String>, ConfigError> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| ConfigError::Read {
        path: name.clone(),
        source,
    })?;
    parse_config(&text, &name)
}

pub fn parse_config(text: &str, name: &str) -> Result<Vec<String>, ConfigError> {
    let mut args = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError::Syntax {
                path: name.into(),
                line: i + 1,
                text: raw.trim().into(),
            });
        };
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        if key == "config" {
            return Err(ConfigError::Nested { path: name.into(), line: i + 1 });
        }
        if SWITCHES.contains(&key.as_str()) {
            match value {
                "true" => args.push(format!("--{key}")),
                "false" => {}
                _ => {
                    return Err(ConfigError::Switch {
                        path: name.into(),
                        line: i + 1,
                        key,
                        value: value.into(),
                    })
                }
            }
        } else {
            args.push(format!("--{key}={value}"));
        }
    }
    Ok(args)
}

/// Value of `--config` in `args`, if present.
pub fn find_config_flag(args: &[String]) -> Option<String> {
    let mut it = args.iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            return it.next().cloned();
        }
        if let Some(v) = a.strip_prefix("--config=") {
            return Some(v.to_string());
        }
    }
    None
}
