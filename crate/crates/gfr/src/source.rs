//! Graph arguments: `family:<tag>:<params>`, `file:<path>`, a bare path, or
//! `-` for standard input.

use std::io::Read;
use std::path::PathBuf;

use gfr_core::families::FamilySpec;
use gfr_core::Graph;

use crate::format::{parse_graph, ParseError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Source {
    Family(FamilySpec),
    File(PathBuf),
    Stdin,
}

#[derive(Debug, thiserror::Error)]
pub enum SourceError {
    #[error("{0}")]
    Family(#[from] gfr_core::families::FamilyError),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{origin}:{error}")]
    Parse { origin: String, error: ParseError },
}

impl Source {
    pub fn parse(arg: &str) -> Result<Source, SourceError> {
        if arg == "-" {
            return Ok(Source::Stdin);
        }
        if let Some(spec) = arg.strip_prefix("family:") {
            return Ok(Source::Family(spec.parse()?));
        }
        let path = arg.strip_prefix("file:").unwrap_or(arg);
        Ok(Source::File(PathBuf::from(path)))
    }

    pub fn load(&self, stdin: &mut dyn Read) -> Result<Graph, SourceError> {
        let (origin, text) = match self {
            Source::Family(spec) => return Ok(spec.build()?),
            Source::File(path) => {
                let text = std::fs::read_to_string(path).map_err(|source| SourceError::Io {
                    path: path.display().to_string(),
                    source,
                })?;
                (path.display().to_string(), text)
            }
            Source::Stdin => {
                let mut text = String::new();
                stdin.read_to_string(&mut text).map_err(|source| SourceError::Io {
                    path: "<stdin>".into(),
                    source,
                })?;
                ("<stdin>".to_string(), text)
            }
        };
        parse_graph(&text).map_err(|error| SourceError::Parse { origin, error })
    }
}

/// Parses and loads a graph argument.
pub fn load(arg: &str, stdin: &mut dyn Read) -> Result<Graph, SourceError> {
    Source::parse(arg)?.load(stdin)
}
