//! Databases: a finite structure together with a theory that is true in it.

use std::sync::Arc;

use crate::semantics::{evaluate, Structure};
use crate::syntax::{Formula, Signature, SignatureError, Symbol};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TheoryError {
    #[error("theory member `{0}` is not a sentence")]
    NotSentence(String),
    #[error(transparent)]
    Signature(#[from] SignatureError),
}

/// Finite ordered list of sentences with structural duplicates removed.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Theory {
    sentences: Vec<Formula>,
}

impl Theory {
    pub fn new<I: IntoIterator<Item = Formula>>(sentences: I) -> Result<Self, TheoryError> {
        let mut out: Vec<Formula> = Vec::new();
        for f in sentences {
            if !f.is_sentence() {
                return Err(TheoryError::NotSentence(f.to_string()));
            }
            if !out.contains(&f) {
                out.push(f);
            }
        }
        let t = Theory { sentences: out };
        t.signature()?;
        Ok(t)
    }

    pub fn empty() -> Self {
        Theory::default()
    }

    pub fn sentences(&self) -> &[Formula] {
        &self.sentences
    }

    pub fn len(&self) -> usize {
        self.sentences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sentences.is_empty()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.sentences.contains(f)
    }

    /// Symbols used by the sentences.
    pub fn signature(&self) -> Result<Signature, SignatureError> {
        Signature::from_symbols(self.sentences.iter().flat_map(|f| f.symbols()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum DatabaseError {
    #[error("theory sentence `{0}` is false in the structure")]
    Violation(Formula),
    #[error("theory sentence `{sentence}` uses `{symbol}`, which the structure does not interpret")]
    OutOfSignature { sentence: Formula, symbol: Symbol },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Correctness<'a> {
    Correct,
    Violated(&'a Formula),
}

impl Correctness<'_> {
    pub fn holds(&self) -> bool {
        matches!(self, Correctness::Correct)
    }
}

/// A structure paired with a theory.
///
/// Databases built by [`make_database`] and by insertions satisfy their
/// theory. Deletions in paper mode may produce databases that do not;
/// [`Database::correctness`] reports the first false sentence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Database {
    structure: Structure,
    theory: Arc<Theory>,
}

impl Database {
    pub(crate) fn unchecked(structure: Structure, theory: Arc<Theory>) -> Self {
        Database { structure, theory }
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    pub fn theory(&self) -> &Arc<Theory> {
        &self.theory
    }

    pub fn signature(&self) -> &Signature {
        self.structure.signature()
    }

    pub fn correctness(&self) -> Correctness<'_> {
        for f in self.theory.sentences() {
            if !evaluate(&self.structure, f).expect("theory members are sentences") {
                return Correctness::Violated(f);
            }
        }
        Correctness::Correct
    }

    /// Every theory sentence that is false in the structure.
    pub fn violations(&self) -> Vec<&Formula> {
        self.theory
            .sentences()
            .iter()
            .filter(|f| !evaluate(&self.structure, f).expect("theory members are sentences"))
            .collect()
    }

    pub fn canonical_encoding(&self) -> Vec<u8> {
        self.structure.canonical_encoding()
    }
}

/// Pairs a structure with a theory, failing on the first sentence that is
/// uninterpreted or false.
pub fn make_database(structure: Structure, theory: impl Into<Arc<Theory>>) -> Result<Database, DatabaseError> {
    let theory = theory.into();
    for f in theory.sentences() {
        if let Some(symbol) = f.symbols().into_iter().find(|s| !structure.interprets_symbol(s)) {
            return Err(DatabaseError::OutOfSignature { sentence: f.clone(), symbol });
        }
    }
    let db = Database { structure, theory };
    if let Correctness::Violated(f) = db.correctness() {
        return Err(DatabaseError::Violation(f.clone()));
    }
    Ok(db)
}

pub fn is_correct(d: &Database) -> Correctness<'_> {
    d.correctness()
}
