//! File formats, the bundled example corpus and the discrepancy report.

pub mod corpus;
pub mod ded;
pub mod fodb;
pub mod report;
pub mod script;

use std::path::{Path, PathBuf};

use crate::database::{DatabaseError, TheoryError};
use crate::lexer::Pos;
use crate::metrics::NotSentence;
use crate::parser::ParseError;
use crate::semantics::StructureError;
use crate::update::UpdateError;

pub use ded::{load_deduction, parse_deduction};
pub use fodb::{load_database, parse_database, parse_fodb, write_database, write_fodb, write_structure, FodbFile};
pub use script::{load_ops_script, parse_ops, write_ops};

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("{path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("{pos}: {message}")]
    Syntax { pos: Pos, message: String },
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error(transparent)]
    Theory(#[from] TheoryError),
    #[error(transparent)]
    Database(#[from] DatabaseError),
    #[error(transparent)]
    Update(#[from] UpdateError),
    #[error(transparent)]
    Deduction(#[from] NotSentence),
}

impl IoError {
    /// Whether the input was well formed but failed a semantic check.
    pub fn is_validation(&self) -> bool {
        matches!(self, IoError::Database(_) | IoError::Update(_))
    }
}

pub(crate) fn read(path: &Path) -> Result<String, IoError> {
    std::fs::read_to_string(path).map_err(|source| IoError::Read { path: path.to_path_buf(), source })
}
