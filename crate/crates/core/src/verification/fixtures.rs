//! Fixture files: one S-box per line as `name decimal,csv,table`.
//! Blank lines and lines starting with `#` are skipped.

use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::{parse_sbox, SBox, SboxError};

pub const COUNTEREXAMPLE_FILE: &str = "counterexamples.txt";
pub const SERPENT_FILE: &str = "serpent.txt";

const EMBEDDED_COUNTEREXAMPLES: &str = include_str!("../../fixtures/counterexamples.txt");
const EMBEDDED_SERPENT: &str = include_str!("../../fixtures/serpent.txt");

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    #[error("missing fixture file {0}")]
    Missing(PathBuf),
    #[error("cannot read {path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{file}:{line}: expected `name table`")]
    Syntax { file: String, line: usize },
    #[error("{file}:{line}: {source}")]
    Parse {
        file: String,
        line: usize,
        source: SboxError,
    },
    #[error("fixture {file} has no entry named {name}")]
    MissingEntry { file: String, name: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedSbox {
    pub name: String,
    pub sbox: SBox,
}

pub fn parse_fixture(file: &str, text: &str) -> Result<Vec<NamedSbox>, FixtureError> {
    let mut out = Vec::new();
    for (index, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (name, table) =
            line.split_once(char::is_whitespace)
                .ok_or_else(|| FixtureError::Syntax {
                    file: file.to_owned(),
                    line: index + 1,
                })?;
        let sbox = parse_sbox(table).map_err(|source| FixtureError::Parse {
            file: file.to_owned(),
            line: index + 1,
            source,
        })?;
        out.push(NamedSbox {
            name: name.to_owned(),
            sbox,
        });
    }
    Ok(out)
}

pub fn format_fixture(entries: &[NamedSbox]) -> String {
    entries
        .iter()
        .map(|e| format!("{} {}\n", e.name, e.sbox.to_csv()))
        .collect()
}

/// Where fixture files come from: the copies compiled into the crate, or a directory.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum FixtureSource {
    #[default]
    Embedded,
    Directory(PathBuf),
}

impl FixtureSource {
    pub fn directory(path: impl AsRef<Path>) -> Self {
        FixtureSource::Directory(path.as_ref().to_path_buf())
    }

    pub fn load(&self, file: &str) -> Result<Vec<NamedSbox>, FixtureError> {
        match self {
            FixtureSource::Embedded => {
                let text = match file {
                    COUNTEREXAMPLE_FILE => EMBEDDED_COUNTEREXAMPLES,
                    SERPENT_FILE => EMBEDDED_SERPENT,
                    other => return Err(FixtureError::Missing(PathBuf::from(other))),
                };
                parse_fixture(file, text)
            }
            FixtureSource::Directory(dir) => {
                let path = dir.join(file);
                let text = std::fs::read_to_string(&path).map_err(|e| {
                    if e.kind() == std::io::ErrorKind::NotFound {
                        FixtureError::Missing(path.clone())
                    } else {
                        FixtureError::Io {
                            path: path.clone(),
                            message: e.to_string(),
                        }
                    }
                })?;
                parse_fixture(file, &text)
            }
        }
    }
}

pub fn lookup<'a>(
    entries: &'a [NamedSbox],
    file: &str,
    name: &str,
) -> Result<&'a SBox, FixtureError> {
    entries
        .iter()
        .find(|e| e.name == name)
        .map(|e| &e.sbox)
        .ok_or_else(|| FixtureError::MissingEntry {
            file: file.to_owned(),
            name: name.to_owned(),
        })
}
