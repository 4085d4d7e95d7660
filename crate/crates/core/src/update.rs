//! Updates: finite sequences of databases, each one legal operation away from
//! the previous. An update is satisfactory for a sentence when its final
//! structure satisfies it; the norm is the first index where it is true.

use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use crate::database::Database;
use crate::ops::{apply, enumerate_successors, OpError, OpMode, OpWarning, Operation};
use crate::semantics::{evaluate, Structure};
use crate::syntax::{Formula, Symbol};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum UpdateError {
    #[error("an update needs at least one database")]
    Empty,
    #[error("{databases} databases need {} operations, got {ops}", databases - 1)]
    OpCount { databases: usize, ops: usize },
    #[error("step {index}: {source}")]
    IllegalStep { index: usize, source: OpError },
    #[error("step {index}: `{op}` does not produce the next database")]
    Mismatch { index: usize, op: Operation },
    #[error("database {index} has a different theory")]
    TheoryMismatch { index: usize },
}

/// A finite update together with the operations that link its databases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Update {
    databases: Vec<Database>,
    ops: Vec<Operation>,
    mode: OpMode,
    warnings: Vec<(usize, OpWarning)>,
}

impl Update {
    pub fn singleton(d: Database) -> Self {
        Update { databases: vec![d], ops: Vec::new(), mode: OpMode::default(), warnings: Vec::new() }
    }

    /// Applies `ops` in order starting from `base`.
    pub fn from_ops(base: Database, ops: Vec<Operation>, mode: OpMode) -> Result<Self, UpdateError> {
        let mut databases = vec![base];
        let mut warnings = Vec::new();
        for (i, op) in ops.iter().enumerate() {
            let applied = apply(&databases[i], op, mode).map_err(|source| UpdateError::IllegalStep { index: i + 1, source })?;
            warnings.extend(applied.warnings.into_iter().map(|w| (i + 1, w)));
            databases.push(applied.database);
        }
        Ok(Update { databases, ops, mode, warnings })
    }

    pub fn databases(&self) -> &[Database] {
        &self.databases
    }

    pub fn ops(&self) -> &[Operation] {
        &self.ops
    }

    pub fn mode(&self) -> OpMode {
        self.mode
    }

    /// Warnings raised while applying the operations, keyed by the index of
    /// the database they produced.
    pub fn warnings(&self) -> &[(usize, OpWarning)] {
        &self.warnings
    }

    /// Number of databases.
    pub fn len(&self) -> usize {
        self.databases.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn base(&self) -> &Database {
        &self.databases[0]
    }

    pub fn last(&self) -> &Database {
        self.databases.last().expect("updates are nonempty")
    }

    pub fn structures(&self) -> impl Iterator<Item = &Structure> {
        self.databases.iter().map(|d| d.structure())
    }
}

/// Checks that each database is produced from the previous one by the
/// corresponding operation.
pub fn validate_update(dbs: Vec<Database>, ops: Vec<Operation>, mode: OpMode) -> Result<Update, UpdateError> {
    let Some(base) = dbs.first() else { return Err(UpdateError::Empty) };
    if ops.len() + 1 != dbs.len() {
        return Err(UpdateError::OpCount { databases: dbs.len(), ops: ops.len() });
    }
    for (i, d) in dbs.iter().enumerate().skip(1) {
        if !Arc::ptr_eq(d.theory(), base.theory()) && d.theory() != base.theory() {
            return Err(UpdateError::TheoryMismatch { index: i });
        }
    }
    let rebuilt = Update::from_ops(base.clone(), ops, mode)?;
    for (i, (got, want)) in rebuilt.databases.iter().zip(&dbs).enumerate().skip(1) {
        if got.canonical_encoding() != want.canonical_encoding() {
            return Err(UpdateError::Mismatch { index: i, op: rebuilt.ops[i - 1].clone() });
        }
    }
    Ok(rebuilt)
}

/// Truth with the convention that open formulas are never satisfied.
pub(crate) fn holds(a: &Structure, f: &Formula) -> bool {
    evaluate(a, f).unwrap_or(false)
}

pub fn is_satisfactory(u: &Update, f: &Formula) -> bool {
    holds(u.last().structure(), f)
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("the update is not satisfactory for `{0}`")]
pub struct Unsatisfactory(pub Formula);

/// Least index whose structure satisfies `f`.
pub fn norm(u: &Update, f: &Formula) -> Result<usize, Unsatisfactory> {
    if !is_satisfactory(u, f) {
        return Err(Unsatisfactory(f.clone()));
    }
    Ok(u.structures().position(|a| holds(a, f)).expect("the final structure satisfies f"))
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("update {index} starts from a different database")]
pub struct DifferentBase {
    pub index: usize,
}

/// Updates over one base database.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UpdateCollection {
    updates: Vec<Update>,
}

impl UpdateCollection {
    pub fn new(updates: Vec<Update>) -> Result<Self, DifferentBase> {
        if let Some(first) = updates.first() {
            let base = first.base().canonical_encoding();
            if let Some(index) = updates.iter().position(|u| u.base().canonical_encoding() != base) {
                return Err(DifferentBase { index });
            }
        }
        Ok(UpdateCollection { updates })
    }

    pub fn updates(&self) -> &[Update] {
        &self.updates
    }

    pub fn len(&self) -> usize {
        self.updates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.updates.is_empty()
    }

    pub fn base(&self) -> Option<&Database> {
        self.updates.first().map(|u| u.base())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Acceptability {
    Acceptable(Update),
    NotFoundUpToBounds { depth: usize, fresh_budget: usize },
}

/// Breadth-first search for a satisfactory update of minimal norm, trying at
/// most `depth` operations. New symbols come from `f`.
///
/// The first satisfying state found is at the smallest depth, and its norm
/// equals that depth: every shallower state on its path was already tested.
pub fn search_minimal_update(d: &Database, f: &Formula, depth: usize, fresh_budget: usize, mode: OpMode) -> Option<Update> {
    if holds(d.structure(), f) {
        return Some(Update { mode, ..Update::singleton(d.clone()) });
    }
    let pool: BTreeSet<Symbol> = crate::syntax::symbols_of(f);

    struct Node {
        database: Database,
        parent: usize,
        op: Option<Operation>,
    }
    let mut nodes = vec![Node { database: d.clone(), parent: 0, op: None }];
    let mut seen: HashSet<Vec<u8>> = HashSet::from([d.canonical_encoding()]);
    let mut level = vec![0usize];

    for _ in 0..depth {
        let mut next = Vec::new();
        for &at in &level {
            for (op, db) in enumerate_successors(&nodes[at].database, mode, fresh_budget, &pool) {
                if !seen.insert(db.canonical_encoding()) {
                    continue;
                }
                let done = holds(db.structure(), f);
                nodes.push(Node { database: db, parent: at, op: Some(op) });
                let id = nodes.len() - 1;
                if done {
                    let mut ops = Vec::new();
                    let mut cur = id;
                    while let Some(op) = &nodes[cur].op {
                        ops.push(op.clone());
                        cur = nodes[cur].parent;
                    }
                    ops.reverse();
                    return Some(Update::from_ops(d.clone(), ops, mode).expect("search replays legal operations"));
                }
                next.push(id);
            }
        }
        if next.is_empty() {
            break;
        }
        level = next;
    }
    None
}

pub fn is_acceptable(d: &Database, f: &Formula, depth: usize, fresh_budget: usize, mode: OpMode) -> Acceptability {
    match search_minimal_update(d, f, depth, fresh_budget, mode) {
        Some(u) => Acceptability::Acceptable(u),
        None => Acceptability::NotFoundUpToBounds { depth, fresh_budget },
    }
}
