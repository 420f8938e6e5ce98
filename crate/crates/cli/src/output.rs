use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed JSON in {what}: {source}")]
    Json {
        what: String,
        source: serde_json::Error,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] steinersym::Error),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Json { .. } => "json",
            CliError::Usage(_) => "usage",
            CliError::Core(e) => e.kind(),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Parses `arg` as inline JSON if it starts with `{`, else reads it as a file.
pub fn load_json<T: DeserializeOwned>(arg: &str) -> CliResult<T> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        fs::read_to_string(arg).map_err(|source| CliError::Io {
            path: arg.into(),
            source,
        })?
    };
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        what: arg.to_string(),
        source,
    })
}

pub fn is_csv(path: &Path) -> bool {
    path.extension()
        .is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

/// 17 significant digits.
pub fn num(x: f64) -> String {
    if x.is_finite() {
        format!("{:.16e}", x + 0.0)
    } else {
        String::new()
    }
}

pub fn write_text(path: &Path, text: &str) -> CliResult<()> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.into(),
        source,
    })
}

/// JSON to `out` (or stdout), or the CSV produced by `csv` when `out` ends
/// in `.csv`.
pub fn emit<T: Serialize>(
    out: Option<&Path>,
    value: &T,
    csv: impl FnOnce() -> String,
) -> CliResult<()> {
    match out {
        Some(p) if is_csv(p) => write_text(p, &csv()),
        Some(p) => {
            let mut s = serde_json::to_string_pretty(value).expect("serializable");
            s.push('\n');
            write_text(p, &s)
        }
        None => {
            println!(
                "{}",
                serde_json::to_string_pretty(value).expect("serializable")
            );
            Ok(())
        }
    }
}
