use std::path::Path;

use qbiperm::algebra::{embed, CStarObject, Channel, ChoiMap, Picture};
use qbiperm::circuits::compile;
use qbiperm::{tol, Error, Matrix};
use serde::Deserialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Parse(String),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Usage(_) => "UsageError",
            CliError::Io(_) => "IoError",
            CliError::Parse(_) => "ParseError",
        }
    }

    /// 2 for anything wrong with the invocation or the input's syntax, 1 for
    /// well-formed input that fails a mathematical check.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Syntax { .. } | Error::InvalidData(_)) => 2,
            CliError::Core(_) => 1,
            _ => 2,
        }
    }
}

/// Channel JSON before validation, so that failed checks keep their kind.
#[derive(Deserialize)]
struct ChannelRecord {
    picture: Picture,
    dom: CStarObject,
    cod: CStarObject,
    blocks: Vec<Vec<Matrix>>,
}

pub fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

/// Loads a channel from a circuit file (`.qc`), channel JSON, or isometry
/// matrix JSON. Circuits and isometries are embedded.
pub fn load(path: &Path) -> Result<Channel, CliError> {
    let text = read(path)?;
    if path.extension().is_some_and(|e| e == "qc") {
        return Ok(compile(&text)?.into_channel()?);
    }
    let parse_err = |e: serde_json::Error| CliError::Parse(format!("{}: {e}", path.display()));
    let value: serde_json::Value = serde_json::from_str(&text).map_err(parse_err)?;
    if value.get("blocks").is_some() {
        let rec: ChannelRecord = serde_json::from_value(value).map_err(parse_err)?;
        let map = ChoiMap::new(rec.dom, rec.cod, rec.blocks)?;
        Ok(Channel::with_tol(map, rec.picture, tol::resolve(None))?)
    } else {
        let v: Matrix = serde_json::from_value(value).map_err(parse_err)?;
        Ok(embed(&v)?)
    }
}
