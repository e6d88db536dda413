//! Library side of the `kappalat` command: report assembly, the
//! cross-check battery, DOT rendering and fixture generation.

pub mod budget;
pub mod dot;
pub mod generate;
pub mod meta;
pub mod report;
pub mod verify;

use std::io::Read;
use std::path::Path;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}

/// Reads a file, or standard input for `-`.
pub fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path)
            .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

/// Parses lattice text together with its `# meta` lines.
pub fn load(text: &str) -> Result<(kappalat::FiniteLattice, meta::Meta), CliError> {
    let l = kappalat::lattice::parse_lattice(text).map_err(|e| CliError::Input(e.to_string()))?;
    let m = meta::Meta::parse(text, l.len())?;
    Ok((l, m))
}
