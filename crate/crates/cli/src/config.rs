//! Line-oriented `key = value` configuration files.
//!
//! Keys are long flag names without the leading dashes. Values from the file
//! are only used for flags absent from the command line, so the command line
//! always wins. The special key `command` selects the subcommand when none
//! is given on the command line.

use std::fs;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config file {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("config line {line}: expected `key = value`")]
    Syntax { line: usize },
    #[error("--config needs a file path")]
    MissingPath,
}

pub fn parse_config(text: &str) -> Result<Vec<(String, String)>, ConfigError> {
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or(ConfigError::Syntax { line: k + 1 })?;
        let key = key.trim().trim_start_matches("--");
        if key.is_empty() {
            return Err(ConfigError::Syntax { line: k + 1 });
        }
        out.push((key.to_string(), value.trim().to_string()));
    }
    Ok(out)
}

fn flag_present(args: &[String], key: &str) -> bool {
    let long = format!("--{key}");
    args.iter().any(|a| *a == long || a.starts_with(&format!("{long}=")))
}

/// Removes `--config <path>` from `args` and splices the file's settings in
/// after the subcommand, which is the first argument in `subcommands`.
pub fn merge_config(mut args: Vec<String>, subcommands: &[&str]) -> Result<Vec<String>, ConfigError> {
    let Some(pos) = args.iter().position(|a| a == "--config" || a.starts_with("--config=")) else {
        return Ok(args);
    };
    let path = if let Some(p) = args[pos].strip_prefix("--config=") {
        let p = p.to_string();
        args.remove(pos);
        p
    } else {
        if pos + 1 >= args.len() {
            return Err(ConfigError::MissingPath);
        }
        let p = args.remove(pos + 1);
        args.remove(pos);
        p
    };
    let text = fs::read_to_string(&path).map_err(|source| ConfigError::Io { path: path.clone(), source })?;
    let settings = parse_config(&text)?;
    let sub_pos = args.iter().skip(1).position(|a| subcommands.contains(&a.as_str())).map(|p| p + 1);
    let sub_pos = match sub_pos {
        Some(p) => p,
        None => match settings.iter().find(|(k, _)| k == "command") {
            Some((_, cmd)) => {
                args.insert(1, cmd.clone());
                1
            }
            None => return Ok(args),
        },
    };
    let mut extra = Vec::new();
    for (key, value) in settings {
        if key == "command" || flag_present(&args, &key) {
            continue;
        }
        match value.as_str() {
            "true" => extra.push(format!("--{key}")),
            "false" => {}
            _ => extra.push(format!("--{key}={value}")),
        }
    }
    args.splice(sub_pos + 1..sub_pos + 1, extra);
    Ok(args)
}
