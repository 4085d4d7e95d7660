//! Finite structures and Tarskian truth.
//!
//! Elements are identified by their position in the domain; labels are unique
//! display names. Equality in formulas is element identity.

use std::collections::{BTreeMap, BTreeSet};

use crate::syntax::{Formula, Signature, Symbol, Term};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element {
    pub label: String,
}

/// Index of an element within one structure's domain.
pub type ElementId = usize;

pub type Tuple = Vec<ElementId>;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StructureError {
    #[error("domain must not be empty")]
    EmptyDomain,
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("`{0}` is not a valid element label")]
    BadLabel(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("constant `{0}` has no interpretation")]
    MissingConstant(String),
    #[error("`{0}` is interpreted but not declared in the signature")]
    Undeclared(String),
    #[error("`{symbol}` is a {expected} but is interpreted as a {found}")]
    KindMismatch {
        symbol: String,
        expected: &'static str,
        found: &'static str,
    },
    #[error("tuple of length {found} in `{symbol}` of arity {arity}")]
    TupleArity { symbol: String, arity: usize, found: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("`{formula}` has free variable(s) {vars:?}; only sentences can be evaluated")]
    NotSentence { formula: String, vars: Vec<String> },
}

/// A finite first-order structure over a signature of constants and relations.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Structure {
    signature: Signature,
    domain: Vec<Element>,
    constants: BTreeMap<String, ElementId>,
    relations: BTreeMap<String, BTreeSet<Tuple>>,
}

impl Structure {
    /// Builds a structure from labels. Relations of the signature that are not
    /// mentioned in `relations` are interpreted as empty.
    pub fn new<L, C, R>(signature: Signature, domain: L, constants: C, relations: R) -> Result<Self, StructureError>
    where
        L: IntoIterator,
        L::Item: Into<String>,
        C: IntoIterator<Item = (String, String)>,
        R: IntoIterator<Item = (String, Vec<Vec<String>>)>,
    {
        let domain: Vec<Element> = domain.into_iter().map(|l| Element { label: l.into() }).collect();
        if domain.is_empty() {
            return Err(StructureError::EmptyDomain);
        }
        let mut index = BTreeMap::new();
        for (i, e) in domain.iter().enumerate() {
            if !crate::lexer::is_identifier(&e.label) {
                return Err(StructureError::BadLabel(e.label.clone()));
            }
            if index.insert(e.label.clone(), i).is_some() {
                return Err(StructureError::DuplicateLabel(e.label.clone()));
            }
        }
        let lookup = |l: &str| index.get(l).copied().ok_or_else(|| StructureError::UnknownElement(l.into()));

        let mut const_map = BTreeMap::new();
        for (name, label) in constants {
            match signature.arity(&name) {
                None => return Err(StructureError::Undeclared(name)),
                Some(0) => {}
                Some(_) => {
                    return Err(StructureError::KindMismatch {
                        symbol: name,
                        expected: "relation",
                        found: "constant",
                    })
                }
            }
            const_map.insert(name, lookup(&label)?);
        }
        if let Some(c) = signature.constants().find(|c| !const_map.contains_key(*c)) {
            return Err(StructureError::MissingConstant(c.to_string()));
        }

        let mut rel_map: BTreeMap<String, BTreeSet<Tuple>> =
            signature.relations().map(|(r, _)| (r.to_string(), BTreeSet::new())).collect();
        for (name, tuples) in relations {
            let arity = match signature.arity(&name) {
                None => return Err(StructureError::Undeclared(name)),
                Some(0) => {
                    return Err(StructureError::KindMismatch {
                        symbol: name,
                        expected: "constant",
                        found: "relation",
                    })
                }
                Some(n) => n,
            };
            let set = rel_map.entry(name.clone()).or_default();
            for t in tuples {
                if t.len() != arity {
                    return Err(StructureError::TupleArity { symbol: name, arity, found: t.len() });
                }
                set.insert(t.iter().map(|l| lookup(l)).collect::<Result<_, _>>()?);
            }
        }
        Ok(Structure { signature, domain, constants: const_map, relations: rel_map })
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn domain(&self) -> &[Element] {
        &self.domain
    }

    pub fn size(&self) -> usize {
        self.domain.len()
    }

    pub fn label(&self, e: ElementId) -> &str {
        &self.domain[e].label
    }

    pub fn element(&self, label: &str) -> Option<ElementId> {
        self.domain.iter().position(|e| e.label == label)
    }

    pub fn constant(&self, name: &str) -> Option<ElementId> {
        self.constants.get(name).copied()
    }

    pub fn relation(&self, name: &str) -> Option<&BTreeSet<Tuple>> {
        self.relations.get(name)
    }

    pub fn constants(&self) -> &BTreeMap<String, ElementId> {
        &self.constants
    }

    pub fn relations(&self) -> &BTreeMap<String, BTreeSet<Tuple>> {
        &self.relations
    }

    /// Whether the structure interprets every symbol of `f` with matching arity.
    pub fn interprets(&self, f: &Formula) -> bool {
        f.symbols().iter().all(|s| self.signature.contains(s))
    }

    pub fn interprets_symbol(&self, s: &Symbol) -> bool {
        self.signature.contains(s)
    }

    /// Symbols whose interpretation differs between the two structures,
    /// including symbols present in only one of them.
    pub fn changed_symbols(&self, other: &Structure) -> Vec<String> {
        let names: BTreeSet<String> = self
            .signature
            .symbols()
            .chain(other.signature.symbols())
            .map(|s| s.name)
            .collect();
        names
            .into_iter()
            .filter(|n| self.interpretation_labels(n) != other.interpretation_labels(n))
            .collect()
    }

    /// Interpretation of a symbol rendered with element labels, so it can be
    /// compared across structures whose domains differ.
    pub fn interpretation_labels(&self, name: &str) -> Option<(usize, BTreeSet<Vec<String>>)> {
        let arity = self.signature.arity(name)?;
        let set = if arity == 0 {
            BTreeSet::from([vec![self.label(self.constants[name]).to_string()]])
        } else {
            self.relations[name]
                .iter()
                .map(|t| t.iter().map(|&e| self.label(e).to_string()).collect())
                .collect()
        };
        Some((arity, set))
    }

    // Mutators used by the structural operations. They keep the invariants
    // of the type but do not check any theory.

    pub(crate) fn push_element(&mut self, label: String) -> ElementId {
        debug_assert!(self.element(&label).is_none());
        self.domain.push(Element { label });
        self.domain.len() - 1
    }

    pub(crate) fn declare(&mut self, symbol: Symbol) {
        if symbol.arity > 0 {
            self.relations.entry(symbol.name.clone()).or_default();
        }
        self.signature.insert(symbol).expect("caller checked the arity");
    }

    pub(crate) fn set_constant(&mut self, name: &str, e: ElementId) {
        self.constants.insert(name.to_string(), e);
    }

    pub(crate) fn insert_tuple(&mut self, name: &str, t: Tuple) -> bool {
        self.relations.entry(name.to_string()).or_default().insert(t)
    }

    pub(crate) fn remove_tuple(&mut self, name: &str, t: &Tuple) -> bool {
        self.relations.get_mut(name).is_some_and(|s| s.remove(t))
    }

    pub(crate) fn drop_symbol(&mut self, name: &str) {
        self.signature.remove(name);
        self.constants.remove(name);
        self.relations.remove(name);
    }

    /// Removes the given elements and renumbers the rest. Callers guarantee
    /// no remaining interpretation refers to a removed element.
    pub(crate) fn remove_elements(&mut self, removed: &BTreeSet<ElementId>) {
        if removed.is_empty() {
            return;
        }
        let mut remap = vec![usize::MAX; self.domain.len()];
        let mut next = 0;
        for (i, slot) in remap.iter_mut().enumerate() {
            if !removed.contains(&i) {
                *slot = next;
                next += 1;
            }
        }
        let mut i = 0;
        self.domain.retain(|_| {
            let keep = !removed.contains(&i);
            i += 1;
            keep
        });
        for e in self.constants.values_mut() {
            debug_assert!(remap[*e] != usize::MAX);
            *e = remap[*e];
        }
        for set in self.relations.values_mut() {
            *set = set
                .iter()
                .map(|t| t.iter().map(|&e| remap[e]).collect())
                .collect();
        }
    }

    /// Deterministic byte encoding: equal iff signature, ordered domain labels
    /// and interpretations are identical. Isomorphic structures with different
    /// labels or element order get different encodings.
    pub fn canonical_encoding(&self) -> Vec<u8> {
        let mut out = Vec::new();
        let mut put = |s: &str| {
            out.extend_from_slice(&(s.len() as u32).to_le_bytes());
            out.extend_from_slice(s.as_bytes());
        };
        put("S");
        for s in self.signature.symbols() {
            put(&s.name);
            put(&s.arity.to_string());
        }
        put("D");
        for e in &self.domain {
            put(&e.label);
        }
        put("C");
        for (c, e) in &self.constants {
            put(c);
            put(&e.to_string());
        }
        put("R");
        for (r, set) in &self.relations {
            put(r);
            put(&set.len().to_string());
            for t in set {
                let t: Vec<String> = t.iter().map(|e| e.to_string()).collect();
                put(&t.join(","));
            }
        }
        out
    }
}

pub fn canonical_encoding(a: &Structure) -> Vec<u8> {
    a.canonical_encoding()
}

/// Truth of a sentence in a structure. A sentence mentioning a symbol the
/// structure does not interpret evaluates to false.
pub fn evaluate(a: &Structure, f: &Formula) -> Result<bool, EvalError> {
    let free = f.free_variables();
    if !free.is_empty() {
        return Err(EvalError::NotSentence { formula: f.to_string(), vars: free.into_iter().collect() });
    }
    if !a.interprets(f) {
        return Ok(false);
    }
    let mut env = Vec::new();
    Ok(eval(a, f, &mut env))
}

fn term_value(a: &Structure, t: &Term, env: &[(&str, ElementId)]) -> ElementId {
    match t {
        Term::Var(v) => env
            .iter()
            .rev()
            .find(|(n, _)| n == v)
            .map(|&(_, e)| e)
            .expect("sentence has no free variables"),
        Term::Const(c) => a.constants[c],
    }
}

fn eval<'f>(a: &Structure, f: &'f Formula, env: &mut Vec<(&'f str, ElementId)>) -> bool {
    match f {
        Formula::Atom { relation, args } => {
            let t: Tuple = args.iter().map(|t| term_value(a, t, env)).collect();
            a.relations[relation].contains(&t)
        }
        Formula::Eq(l, r) => term_value(a, l, env) == term_value(a, r, env),
        Formula::Not(g) => !eval(a, g, env),
        Formula::And(l, r) => eval(a, l, env) && eval(a, r, env),
        Formula::Or(l, r) => eval(a, l, env) || eval(a, r, env),
        Formula::Implies(l, r) => !eval(a, l, env) || eval(a, r, env),
        Formula::Iff(l, r) => eval(a, l, env) == eval(a, r, env),
        Formula::Forall(v, body) => (0..a.size()).all(|e| {
            env.push((v, e));
            let r = eval(a, body, env);
            env.pop();
            r
        }),
        Formula::Exists(v, body) => (0..a.size()).any(|e| {
            env.push((v, e));
            let r = eval(a, body, env);
            env.pop();
            r
        }),
    }
}

/// First sentence of `theory` that is false in `a`, if any.
pub fn first_violation<'t>(a: &Structure, theory: &'t [Formula]) -> Result<Option<&'t Formula>, EvalError> {
    for f in theory {
        if !evaluate(a, f)? {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

pub fn models_theory(a: &Structure, theory: &[Formula]) -> Result<bool, EvalError> {
    Ok(first_violation(a, theory)?.is_none())
}
