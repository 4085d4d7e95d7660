//! Signatures and first-order formulas with equality.
//!
//! Formulas are plain trees. Equality between formulas is structural and
//! includes bound variable names, so `forall x E(x)` and `forall y E(y)` are
//! different members of a set.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymbolKind {
    Constant,
    Relation,
}

/// A constant (arity 0) or relation (arity >= 1) symbol.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Symbol {
    pub name: String,
    pub arity: usize,
}

impl Symbol {
    pub fn constant(name: impl Into<String>) -> Self {
        Symbol { name: name.into(), arity: 0 }
    }

    pub fn relation(name: impl Into<String>, arity: usize) -> Self {
        assert!(arity > 0, "relation symbols have positive arity");
        Symbol { name: name.into(), arity }
    }

    pub fn kind(&self) -> SymbolKind {
        if self.arity == 0 {
            SymbolKind::Constant
        } else {
            SymbolKind::Relation
        }
    }

    pub fn is_constant(&self) -> bool {
        self.arity == 0
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.name, self.arity)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SignatureError {
    #[error("symbol `{name}` declared with arity {existing} and {requested}")]
    Conflict {
        name: String,
        existing: usize,
        requested: usize,
    },
    #[error("`{0}` is not a valid symbol name")]
    BadName(String),
}

/// A finite set of symbols with unique names, kept in name order.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    arities: BTreeMap<String, usize>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_symbols<I: IntoIterator<Item = Symbol>>(symbols: I) -> Result<Self, SignatureError> {
        let mut sig = Signature::new();
        for s in symbols {
            sig.insert(s)?;
        }
        Ok(sig)
    }

    /// Adds a symbol. Re-adding an identical symbol is a no-op.
    pub fn insert(&mut self, symbol: Symbol) -> Result<(), SignatureError> {
        if !crate::lexer::is_identifier(&symbol.name) {
            return Err(SignatureError::BadName(symbol.name));
        }
        match self.arities.get(&symbol.name) {
            Some(&a) if a != symbol.arity => Err(SignatureError::Conflict {
                name: symbol.name,
                existing: a,
                requested: symbol.arity,
            }),
            Some(_) => Ok(()),
            None => {
                self.arities.insert(symbol.name, symbol.arity);
                Ok(())
            }
        }
    }

    pub fn remove(&mut self, name: &str) -> Option<Symbol> {
        self.arities.remove_entry(name).map(|(name, arity)| Symbol { name, arity })
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.arities.get(name).copied()
    }

    pub fn contains(&self, symbol: &Symbol) -> bool {
        self.arity(&symbol.name) == Some(symbol.arity)
    }

    pub fn contains_name(&self, name: &str) -> bool {
        self.arities.contains_key(name)
    }

    pub fn symbols(&self) -> impl Iterator<Item = Symbol> + '_ {
        self.arities.iter().map(|(n, &a)| Symbol { name: n.clone(), arity: a })
    }

    pub fn constants(&self) -> impl Iterator<Item = &str> + '_ {
        self.arities.iter().filter(|(_, &a)| a == 0).map(|(n, _)| n.as_str())
    }

    pub fn relations(&self) -> impl Iterator<Item = (&str, usize)> + '_ {
        self.arities.iter().filter(|(_, &a)| a > 0).map(|(n, &a)| (n.as_str(), a))
    }

    pub fn len(&self) -> usize {
        self.arities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arities.is_empty()
    }

    pub fn union(&self, other: &Signature) -> Result<Signature, SignatureError> {
        let mut out = self.clone();
        for s in other.symbols() {
            out.insert(s)?;
        }
        Ok(out)
    }

    pub fn is_subset(&self, other: &Signature) -> bool {
        self.arities.iter().all(|(n, &a)| other.arity(n) == Some(a))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Var(String),
    Const(String),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::Const(name.into())
    }

    pub fn name(&self) -> &str {
        match self {
            Term::Var(n) | Term::Const(n) => n,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom { relation: String, args: Vec<Term> },
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn atom(relation: impl Into<String>, args: Vec<Term>) -> Self {
        Formula::Atom { relation: relation.into(), args }
    }

    pub fn eq(l: Term, r: Term) -> Self {
        Formula::Eq(l, r)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn implies(l: Formula, r: Formula) -> Self {
        Formula::Implies(Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Self {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    pub fn forall(v: impl Into<String>, body: Formula) -> Self {
        Formula::Forall(v.into(), Box::new(body))
    }

    pub fn exists(v: impl Into<String>, body: Formula) -> Self {
        Formula::Exists(v.into(), Box::new(body))
    }

    /// Left-nested conjunction; `None` for an empty list.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Option<Formula> {
        items.into_iter().reduce(Formula::and)
    }

    pub fn free_variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        let mut bound = Vec::new();
        self.collect_free(&mut bound, &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        let mut term = |t: &Term, bound: &Vec<&str>| {
            if let Term::Var(v) = t {
                if !bound.contains(&v.as_str()) {
                    out.insert(v.clone());
                }
            }
        };
        match self {
            Formula::Atom { args, .. } => args.iter().for_each(|t| term(t, bound)),
            Formula::Eq(l, r) => {
                term(l, bound);
                term(r, bound);
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                l.collect_free(bound, out);
                r.collect_free(bound, out);
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                bound.push(v);
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_variables().is_empty()
    }

    /// Every constant and relation symbol occurring in the formula.
    pub fn symbols(&self) -> BTreeSet<Symbol> {
        let mut out = BTreeSet::new();
        self.visit_atoms(&mut |f| match f {
            Formula::Atom { relation, args } => {
                out.insert(Symbol { name: relation.clone(), arity: args.len() });
                for t in args {
                    if let Term::Const(c) = t {
                        out.insert(Symbol::constant(c.clone()));
                    }
                }
            }
            Formula::Eq(l, r) => {
                for t in [l, r] {
                    if let Term::Const(c) = t {
                        out.insert(Symbol::constant(c.clone()));
                    }
                }
            }
            _ => {}
        });
        out
    }

    fn visit_atoms<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        match self {
            Formula::Atom { .. } | Formula::Eq(..) => f(self),
            Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => g.visit_atoms(f),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                l.visit_atoms(f);
                r.visit_atoms(f);
            }
        }
    }

    /// Number of connective and quantifier nodes on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom { .. } | Formula::Eq(..) => 0,
            Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => 1 + g.depth(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
                1 + l.depth().max(r.depth())
            }
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => PREC_IFF,
            Formula::Implies(..) => PREC_IMPLIES,
            Formula::Or(..) => PREC_OR,
            Formula::And(..) => PREC_AND,
            Formula::Not(g) if matches!(**g, Formula::Eq(..)) => PREC_ATOM,
            Formula::Not(_) | Formula::Forall(..) | Formula::Exists(..) => PREC_UNARY,
            Formula::Atom { .. } | Formula::Eq(..) => PREC_ATOM,
        }
    }
}

/// Symbols of a formula, as a free function for call sites that read better that way.
pub fn symbols_of(f: &Formula) -> BTreeSet<Symbol> {
    f.symbols()
}

pub fn free_variables(f: &Formula) -> BTreeSet<String> {
    f.free_variables()
}

const PREC_IFF: u8 = 1;
const PREC_IMPLIES: u8 = 2;
const PREC_OR: u8 = 3;
const PREC_AND: u8 = 4;
const PREC_UNARY: u8 = 5;
const PREC_ATOM: u8 = 6;

struct Prec<'a>(&'a Formula, u8);

impl fmt::Display for Prec<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.precedence() < self.1 {
            write!(f, "({})", self.0)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom { relation, args } => {
                write!(f, "{relation}(")?;
                for (i, t) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{t}")?;
                }
                f.write_str(")")
            }
            Formula::Eq(l, r) => write!(f, "{l} = {r}"),
            Formula::Not(g) => match &**g {
                Formula::Eq(l, r) => write!(f, "{l} != {r}"),
                g => write!(f, "~{}", Prec(g, PREC_UNARY)),
            },
            Formula::And(l, r) => write!(f, "{} & {}", Prec(l, PREC_AND), Prec(r, PREC_AND + 1)),
            Formula::Or(l, r) => write!(f, "{} | {}", Prec(l, PREC_OR), Prec(r, PREC_OR + 1)),
            Formula::Implies(l, r) => {
                write!(f, "{} -> {}", Prec(l, PREC_IMPLIES + 1), Prec(r, PREC_IMPLIES))
            }
            Formula::Iff(l, r) => write!(f, "{} <-> {}", Prec(l, PREC_IFF), Prec(r, PREC_IFF + 1)),
            Formula::Forall(v, body) => write!(f, "forall {v} {}", QuantBody(body)),
            Formula::Exists(v, body) => write!(f, "exists {v} {}", QuantBody(body)),
        }
    }
}

struct QuantBody<'a>(&'a Formula);

impl fmt::Display for QuantBody<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Formula::Eq(..) => write!(f, "({})", self.0),
            Formula::Not(g) if matches!(**g, Formula::Eq(..)) => write!(f, "({})", self.0),
            body => write!(f, "{}", Prec(body, PREC_UNARY)),
        }
    }
}

pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}
