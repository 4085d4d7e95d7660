//! Insertions and deletions: the two structural operations that change the
//! interpretation of exactly one symbol of a database.
//!
//! The theory proviso ("every theory sentence stays true") is always enforced
//! for insertions. For deletions it depends on [`OpMode`]: `strict` enforces
//! it, `paper` lets the deletion through and attaches a
//! [`OpWarning::TheoryBreak`] listing the falsified sentences.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::database::Database;
use crate::semantics::{ElementId, Structure, Tuple};
use crate::syntax::{Formula, Symbol};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OpMode {
    /// Proviso enforced for insertions only.
    #[default]
    Paper,
    /// Proviso enforced for insertions and deletions.
    Strict,
}

impl fmt::Display for OpMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OpMode::Paper => "paper",
            OpMode::Strict => "strict",
        })
    }
}

impl FromStr for OpMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "paper" => Ok(OpMode::Paper),
            "strict" => Ok(OpMode::Strict),
            other => Err(format!("unknown mode `{other}` (expected `paper` or `strict`)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum OpKind {
    Insert,
    Delete,
}

/// An element named by an operation: one already in the domain, or a new one
/// to be appended under the given label.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElementRef {
    Existing(String),
    Fresh(String),
}

impl fmt::Display for ElementRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementRef::Existing(l) => f.write_str(l),
            ElementRef::Fresh(l) => write!(f, "new {l}"),
        }
    }
}

/// One structural operation. `Display` renders the `.ops` script line.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Operation {
    InsertConstant { name: String, target: ElementRef },
    InsertTuple { relation: String, args: Vec<ElementRef> },
    ReinterpretConstant { name: String, target: String },
    DropConstant { name: String },
    RemoveTuple { relation: String, tuple: Vec<String> },
    DropRelation { relation: String },
}

impl Operation {
    pub fn kind(&self) -> OpKind {
        match self {
            Operation::InsertConstant { .. } | Operation::InsertTuple { .. } => OpKind::Insert,
            _ => OpKind::Delete,
        }
    }

    pub fn symbol_name(&self) -> &str {
        match self {
            Operation::InsertConstant { name, .. }
            | Operation::ReinterpretConstant { name, .. }
            | Operation::DropConstant { name } => name,
            Operation::InsertTuple { relation, .. }
            | Operation::RemoveTuple { relation, .. }
            | Operation::DropRelation { relation } => relation,
        }
    }

    /// The symbol acted on; relation arity comes from the payload where it
    /// carries one.
    pub fn symbol(&self, d: &Database) -> Symbol {
        let name = self.symbol_name().to_string();
        let arity = match self {
            Operation::InsertConstant { .. }
            | Operation::ReinterpretConstant { .. }
            | Operation::DropConstant { .. } => 0,
            Operation::InsertTuple { args, .. } => args.len(),
            Operation::RemoveTuple { tuple, .. } => tuple.len(),
            Operation::DropRelation { relation } => d.signature().arity(relation).unwrap_or(1),
        };
        Symbol { name, arity }
    }
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operation::InsertConstant { name, target } => write!(f, "insert const {name} = {target}"),
            Operation::InsertTuple { relation, args } => {
                let args: Vec<String> = args.iter().map(|a| a.to_string()).collect();
                write!(f, "insert rel {relation} ({})", args.join(", "))
            }
            Operation::ReinterpretConstant { name, target } => {
                write!(f, "delete const {name} reinterpret {target}")
            }
            Operation::DropConstant { name } => write!(f, "delete const {name} drop"),
            Operation::RemoveTuple { relation, tuple } => {
                write!(f, "delete rel {relation} tuple ({})", tuple.join(", "))
            }
            Operation::DropRelation { relation } => write!(f, "delete rel {relation} drop"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpWarning {
    /// Insertion that leaves the database unchanged.
    IdentityInsertion { symbol: String },
    /// Paper-mode deletion that falsified these theory sentences.
    TheoryBreak { violated: Vec<Formula> },
}

impl fmt::Display for OpWarning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpWarning::IdentityInsertion { symbol } => {
                write!(f, "insertion of `{symbol}` leaves the database unchanged")
            }
            OpWarning::TheoryBreak { violated } => {
                let v: Vec<String> = violated.iter().map(|s| s.to_string()).collect();
                write!(f, "theory break: {}", v.join("; "))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum OpError {
    #[error("`{0}` is not an insertion")]
    NotAnInsertion(String),
    #[error("`{0}` is not a deletion")]
    NotADeletion(String),
    #[error("theory sentence `{0}` would be false")]
    Proviso(Formula),
    #[error("`{symbol}` has arity {expected}, operation uses {found}")]
    ArityMismatch { symbol: String, expected: usize, found: usize },
    #[error("fresh element label `{0}` already names an element")]
    FreshLabelCollision(String),
    #[error("`{0}` is not a valid element label")]
    BadLabel(String),
    #[error("no element labelled `{0}`")]
    UnknownElement(String),
    #[error("`{0}` is not in the signature")]
    NotInSignature(String),
    #[error("constant `{symbol}` already denotes `{target}`")]
    SameTarget { symbol: String, target: String },
    #[error("constant `{symbol}` is already in the signature (denotes `{current}`); only the identity insertion is allowed")]
    AlreadyInterpreted { symbol: String, current: String },
    #[error("tuple ({}) is not in `{relation}`", tuple.join(", "))]
    TupleAbsent { relation: String, tuple: Vec<String> },
    #[error("relation tuples must have at least one component")]
    EmptyTuple,
}

/// Result of a legal operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Applied {
    pub database: Database,
    pub warnings: Vec<OpWarning>,
}

fn theory_check(d: &Database, a: &Structure) -> Option<Formula> {
    let candidate = Database::unchecked(a.clone(), d.theory().clone());
    candidate.violations().first().map(|f| (*f).clone())
}

fn resolve(a: &Structure, label: &str) -> Result<ElementId, OpError> {
    a.element(label).ok_or_else(|| OpError::UnknownElement(label.to_string()))
}

/// Resolves an element reference, appending fresh elements. Repeating the
/// same fresh label within one operation names the same new element.
fn resolve_ref(a: &mut Structure, r: &ElementRef, fresh: &mut BTreeMap<String, ElementId>) -> Result<ElementId, OpError> {
    match r {
        ElementRef::Existing(l) => resolve(a, l),
        ElementRef::Fresh(l) => {
            if let Some(&e) = fresh.get(l) {
                return Ok(e);
            }
            if !crate::lexer::is_identifier(l) {
                return Err(OpError::BadLabel(l.clone()));
            }
            if a.element(l).is_some() {
                return Err(OpError::FreshLabelCollision(l.clone()));
            }
            let e = a.push_element(l.clone());
            fresh.insert(l.clone(), e);
            Ok(e)
        }
    }
}

pub fn apply_insertion(d: &Database, op: &Operation, _mode: OpMode) -> Result<Applied, OpError> {
    let mut a = d.structure().clone();
    let mut fresh = BTreeMap::new();
    let identity = |symbol: &str| Applied {
        database: d.clone(),
        warnings: vec![OpWarning::IdentityInsertion { symbol: symbol.to_string() }],
    };
    match op {
        Operation::InsertConstant { name, target } => {
            match a.signature().arity(name) {
                Some(n) if n > 0 => {
                    return Err(OpError::ArityMismatch { symbol: name.clone(), expected: n, found: 0 })
                }
                Some(_) => {
                    let current = a.constant(name).expect("declared constant is interpreted");
                    if let ElementRef::Existing(l) = target {
                        if resolve(&a, l)? == current {
                            return Ok(identity(name));
                        }
                    }
                    let e = resolve_ref(&mut a, target, &mut fresh)?;
                    a.set_constant(name, e);
                    if let Some(f) = theory_check(d, &a) {
                        return Err(OpError::Proviso(f));
                    }
                    return Err(OpError::AlreadyInterpreted {
                        symbol: name.clone(),
                        current: d.structure().label(current).to_string(),
                    });
                }
                None => {
                    let e = resolve_ref(&mut a, target, &mut fresh)?;
                    a.declare(Symbol::constant(name.clone()));
                    a.set_constant(name, e);
                }
            }
        }
        Operation::InsertTuple { relation, args } => {
            if args.is_empty() {
                return Err(OpError::EmptyTuple);
            }
            let declared = a.signature().arity(relation);
            if let Some(n) = declared {
                if n != args.len() {
                    return Err(OpError::ArityMismatch { symbol: relation.clone(), expected: n, found: args.len() });
                }
            }
            let tuple: Tuple = args
                .iter()
                .map(|r| resolve_ref(&mut a, r, &mut fresh))
                .collect::<Result<_, _>>()?;
            if declared.is_some() && fresh.is_empty() && a.relation(relation).is_some_and(|s| s.contains(&tuple)) {
                return Ok(identity(relation));
            }
            if declared.is_none() {
                a.declare(Symbol::relation(relation.clone(), args.len()));
            }
            a.insert_tuple(relation, tuple);
        }
        other => return Err(OpError::NotAnInsertion(other.to_string())),
    }
    if let Some(f) = theory_check(d, &a) {
        return Err(OpError::Proviso(f));
    }
    Ok(Applied { database: Database::unchecked(a, d.theory().clone()), warnings: Vec::new() })
}

/// An element is free for `sigma` when no other constant denotes it and no
/// relation other than `sigma` has a tuple containing it.
pub fn free_for(a: &Structure, e: ElementId, sigma: &Symbol) -> bool {
    let named = a.constants().iter().any(|(c, &x)| *c != sigma.name && x == e);
    let used = a
        .relations()
        .iter()
        .filter(|(r, _)| **r != sigma.name)
        .any(|(_, set)| set.iter().any(|t| t.contains(&e)));
    !named && !used
}

pub fn apply_deletion(d: &Database, op: &Operation, mode: OpMode) -> Result<Applied, OpError> {
    let mut a = d.structure().clone();
    let name = op.symbol_name();
    let declared = a.signature().arity(name).ok_or_else(|| OpError::NotInSignature(name.to_string()))?;
    let want_constant = matches!(op, Operation::ReinterpretConstant { .. } | Operation::DropConstant { .. });
    if want_constant != (declared == 0) {
        return Err(OpError::ArityMismatch {
            symbol: name.to_string(),
            expected: declared,
            found: if want_constant { 0 } else { declared.max(1) },
        });
    }
    match op {
        Operation::ReinterpretConstant { name, target } => {
            let e = resolve(&a, target)?;
            if a.constant(name) == Some(e) {
                return Err(OpError::SameTarget { symbol: name.clone(), target: target.clone() });
            }
            a.set_constant(name, e);
        }
        Operation::DropConstant { name } => {
            let e = a.constant(name).expect("declared constant is interpreted");
            let removable = free_for(&a, e, &Symbol::constant(name.clone()));
            a.drop_symbol(name);
            if removable && a.size() > 1 {
                a.remove_elements(&BTreeSet::from([e]));
            }
        }
        Operation::RemoveTuple { relation, tuple } => {
            if tuple.len() != declared {
                return Err(OpError::ArityMismatch { symbol: relation.clone(), expected: declared, found: tuple.len() });
            }
            let absent = || OpError::TupleAbsent { relation: relation.clone(), tuple: tuple.clone() };
            let t: Tuple = tuple.iter().map(|l| a.element(l).ok_or_else(absent)).collect::<Result<_, _>>()?;
            if !a.remove_tuple(relation, &t) {
                return Err(absent());
            }
        }
        Operation::DropRelation { relation } => {
            let sigma = Symbol { name: relation.clone(), arity: declared };
            let removed: BTreeSet<ElementId> = a
                .relation(relation)
                .into_iter()
                .flatten()
                .flatten()
                .copied()
                .filter(|&e| free_for(&a, e, &sigma))
                .collect();
            a.drop_symbol(relation);
            // a structure keeps at least one element
            if removed.len() < a.size() {
                a.remove_elements(&removed);
            }
        }
        other => return Err(OpError::NotADeletion(other.to_string())),
    }
    let database = Database::unchecked(a, d.theory().clone());
    let violated: Vec<Formula> = database.violations().into_iter().cloned().collect();
    let mut warnings = Vec::new();
    if !violated.is_empty() {
        match mode {
            OpMode::Strict => return Err(OpError::Proviso(violated[0].clone())),
            OpMode::Paper => warnings.push(OpWarning::TheoryBreak { violated }),
        }
    }
    Ok(Applied { database, warnings })
}

pub fn apply(d: &Database, op: &Operation, mode: OpMode) -> Result<Applied, OpError> {
    match op.kind() {
        OpKind::Insert => apply_insertion(d, op, mode),
        OpKind::Delete => apply_deletion(d, op, mode),
    }
}

/// Labels `n1`, `n2`, ... not already used in the domain.
fn fresh_labels(a: &Structure, count: usize) -> Vec<String> {
    (1..)
        .map(|k| format!("n{k}"))
        .filter(|l| a.element(l).is_none())
        .take(count)
        .collect()
}

/// Every tuple of the given arity over the existing elements followed by up to
/// `budget` fresh ones. Fresh elements appear in first-use order so that no two
/// tuples differ only by renaming fresh elements.
fn candidate_tuples(size: usize, arity: usize, budget: usize) -> Vec<Vec<(bool, usize)>> {
    fn go(size: usize, arity: usize, budget: usize, used: usize, cur: &mut Vec<(bool, usize)>, out: &mut Vec<Vec<(bool, usize)>>) {
        if cur.len() == arity {
            out.push(cur.clone());
            return;
        }
        for e in 0..size {
            cur.push((false, e));
            go(size, arity, budget, used, cur, out);
            cur.pop();
        }
        for j in 0..budget.min(used + 1) {
            cur.push((true, j));
            go(size, arity, budget, used.max(j + 1), cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(size, arity, budget, 0, &mut Vec::new(), &mut out);
    out
}

/// All legal single operations from `d`, over the symbols of its signature
/// plus `pool`, creating at most `fresh_budget` new elements per operation.
///
/// Order: symbol name, then insertions before deletions, then element order.
/// Identity insertions and results equal to `d` are left out, and each
/// resulting structure appears once.
pub fn enumerate_successors(
    d: &Database,
    mode: OpMode,
    fresh_budget: usize,
    pool: &BTreeSet<Symbol>,
) -> Vec<(Operation, Database)> {
    let a = d.structure();
    let mut symbols: BTreeMap<String, usize> = a.signature().symbols().map(|s| (s.name, s.arity)).collect();
    for s in pool {
        symbols.entry(s.name.clone()).or_insert(s.arity);
    }
    let labels: Vec<String> = a.domain().iter().map(|e| e.label.clone()).collect();
    let fresh = fresh_labels(a, fresh_budget);

    let mut candidates = Vec::new();
    for (name, &arity) in &symbols {
        let declared = a.signature().contains_name(name);
        if arity == 0 {
            if declared {
                let current = a.constant(name);
                for (i, l) in labels.iter().enumerate() {
                    if Some(i) != current {
                        candidates.push(Operation::ReinterpretConstant { name: name.clone(), target: l.clone() });
                    }
                }
                candidates.push(Operation::DropConstant { name: name.clone() });
            } else {
                for l in &labels {
                    candidates.push(Operation::InsertConstant { name: name.clone(), target: ElementRef::Existing(l.clone()) });
                }
                if let Some(l) = fresh.first() {
                    candidates.push(Operation::InsertConstant { name: name.clone(), target: ElementRef::Fresh(l.clone()) });
                }
            }
        } else {
            let present = a.relation(name);
            for t in candidate_tuples(labels.len(), arity, fresh_budget) {
                if t.iter().all(|&(f, _)| !f) {
                    let ids: Tuple = t.iter().map(|&(_, e)| e).collect();
                    if present.is_some_and(|s| s.contains(&ids)) {
                        continue;
                    }
                }
                let args = t
                    .iter()
                    .map(|&(f, e)| if f { ElementRef::Fresh(fresh[e].clone()) } else { ElementRef::Existing(labels[e].clone()) })
                    .collect();
                candidates.push(Operation::InsertTuple { relation: name.clone(), args });
            }
            if let Some(set) = present {
                for t in set {
                    candidates.push(Operation::RemoveTuple {
                        relation: name.clone(),
                        tuple: t.iter().map(|&e| labels[e].clone()).collect(),
                    });
                }
                candidates.push(Operation::DropRelation { relation: name.clone() });
            }
        }
    }

    let own = d.canonical_encoding();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for op in candidates {
        let Ok(applied) = apply(d, &op, mode) else { continue };
        if applied.warnings.iter().any(|w| matches!(w, OpWarning::IdentityInsertion { .. })) {
            continue;
        }
        let enc = applied.database.canonical_encoding();
        if enc == own || !seen.insert(enc) {
            continue;
        }
        out.push((op, applied.database));
    }
    out
}

/// Why a target structure is not one legal operation away.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StepRejection {
    #[error("no symbol changes")]
    NoChange,
    #[error("more than one symbol changes: {}", .0.join(", "))]
    SeveralSymbols(Vec<String>),
    #[error("`{symbol}` changes in a way no single operation produces: {detail}")]
    NotSingleOperation { symbol: String, detail: String },
    #[error("`{op}` is not legal: {error}")]
    Illegal { op: Operation, error: OpError },
    #[error("`{op}` does not produce the target structure: {detail}")]
    Mismatch { op: Operation, detail: String },
}

fn element_ref(from: &Structure, label: &str) -> ElementRef {
    if from.element(label).is_some() {
        ElementRef::Existing(label.to_string())
    } else {
        ElementRef::Fresh(label.to_string())
    }
}

/// Finds the operation that turns `from` into `to`, if there is one.
pub fn infer_operation(from: &Database, to: &Structure, mode: OpMode) -> Result<Operation, StepRejection> {
    let a = from.structure();
    let changed = a.changed_symbols(to);
    let symbol = match changed.as_slice() {
        [] if a.domain() == to.domain() => return Err(StepRejection::NoChange),
        [] => {
            return Err(StepRejection::NotSingleOperation {
                symbol: String::new(),
                detail: "only the domain changes".into(),
            })
        }
        [one] => one.clone(),
        _ => return Err(StepRejection::SeveralSymbols(changed)),
    };
    let not_single = |detail: String| StepRejection::NotSingleOperation { symbol: symbol.clone(), detail };
    let op = match (a.interpretation_labels(&symbol), to.interpretation_labels(&symbol)) {
        (None, Some((0, set))) => {
            let l = &set.iter().next().expect("constant has a value")[0];
            Operation::InsertConstant { name: symbol.clone(), target: element_ref(a, l) }
        }
        (Some((0, _)), Some((0, set))) => {
            let l = &set.iter().next().expect("constant has a value")[0];
            match element_ref(a, l) {
                ElementRef::Existing(l) => Operation::ReinterpretConstant { name: symbol.clone(), target: l },
                fresh => Operation::InsertConstant { name: symbol.clone(), target: fresh },
            }
        }
        (Some((0, _)), None) => Operation::DropConstant { name: symbol.clone() },
        (None, Some((_, set))) => {
            if set.len() != 1 {
                return Err(not_single(format!("new relation has {} tuples", set.len())));
            }
            let t = set.into_iter().next().expect("one tuple");
            Operation::InsertTuple { relation: symbol.clone(), args: t.iter().map(|l| element_ref(a, l)).collect() }
        }
        (Some((n, before)), Some((m, after))) if n == m => {
            let added: Vec<_> = after.difference(&before).cloned().collect();
            let removed: Vec<_> = before.difference(&after).cloned().collect();
            match (added.as_slice(), removed.as_slice()) {
                ([t], []) => Operation::InsertTuple {
                    relation: symbol.clone(),
                    args: t.iter().map(|l| element_ref(a, l)).collect(),
                },
                ([], [t]) => Operation::RemoveTuple { relation: symbol.clone(), tuple: t.clone() },
                _ => {
                    return Err(not_single(format!("{} tuple(s) added, {} removed", added.len(), removed.len())))
                }
            }
        }
        (Some(_), None) => Operation::DropRelation { relation: symbol.clone() },
        (before, after) => {
            return Err(not_single(format!(
                "arity changes from {:?} to {:?}",
                before.map(|b| b.0),
                after.map(|b| b.0)
            )))
        }
    };
    let applied = apply(from, &op, mode).map_err(|error| StepRejection::Illegal { op: op.clone(), error })?;
    let got = applied.database.structure();
    if got.canonical_encoding() != to.canonical_encoding() {
        let have: Vec<&str> = got.domain().iter().map(|e| e.label.as_str()).collect();
        let want: Vec<&str> = to.domain().iter().map(|e| e.label.as_str()).collect();
        let detail = if have != want {
            format!("domain would be {{{}}}, target has {{{}}}", have.join(", "), want.join(", "))
        } else {
            "interpretations differ".to_string()
        };
        return Err(StepRejection::Mismatch { op, detail });
    }
    Ok(op)
}
