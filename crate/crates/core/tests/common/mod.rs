//! Independent oracles, random instance generators and the theorem checks
//! shared by the property and acceptance suites.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashSet};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use seminfo::io::{corpus, write_database};
use seminfo::metrics::complexity_of_set;
use seminfo::ops::ElementRef;
use seminfo::{
    apply, complexity, enumerate_successors, entails, informativity_of_proposition, is_satisfactory, is_tautology,
    is_valid_deduction, make_database, relevancy, relevant_propositions, symbols_of, BoundConfig, Database, Deduction,
    Formula, OpMode, Operation, Signature, Structure, Symbol, Term, Theory, Update, UpdateCollection, Verdict,
};

// ---------------------------------------------------------------------------
// Evaluation oracle: truth tables over every assignment of the bound variables.

fn bound_vars(f: &Formula, out: &mut Vec<String>) {
    match f {
        Formula::Atom { .. } | Formula::Eq(..) => {}
        Formula::Not(g) => bound_vars(g, out),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
            bound_vars(l, out);
            bound_vars(r, out);
        }
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            if !out.contains(v) {
                out.push(v.clone());
            }
            bound_vars(g, out);
        }
    }
}

fn symbols_interpreted(a: &Structure, f: &Formula) -> bool {
    let term_ok = |t: &Term| match t {
        Term::Var(_) => true,
        Term::Const(c) => a.constant(c).is_some(),
    };
    match f {
        Formula::Atom { relation, args } => {
            a.signature().arity(relation) == Some(args.len()) && a.relation(relation).is_some() && args.iter().all(term_ok)
        }
        Formula::Eq(l, r) => term_ok(l) && term_ok(r),
        Formula::Not(g) | Formula::Forall(_, g) | Formula::Exists(_, g) => symbols_interpreted(a, g),
        Formula::And(l, r) | Formula::Or(l, r) | Formula::Implies(l, r) | Formula::Iff(l, r) => {
            symbols_interpreted(a, l) && symbols_interpreted(a, r)
        }
    }
}

struct Table<'a> {
    a: &'a Structure,
    vars: Vec<String>,
    size: usize,
    count: usize,
}

impl Table<'_> {
    fn digit(&self, assignment: usize, var: usize) -> usize {
        (assignment / self.size.pow(var as u32)) % self.size
    }

    fn with(&self, assignment: usize, var: usize, e: usize) -> usize {
        assignment - self.digit(assignment, var) * self.size.pow(var as u32) + e * self.size.pow(var as u32)
    }

    fn term(&self, t: &Term, assignment: usize) -> usize {
        match t {
            Term::Var(v) => {
                let i = self.vars.iter().position(|w| w == v).expect("sentence variables are bound");
                self.digit(assignment, i)
            }
            Term::Const(c) => self.a.constant(c).expect("checked interpreted"),
        }
    }

    /// The set of satisfying assignments, one flag per assignment.
    fn table(&self, f: &Formula) -> Vec<bool> {
        let all = 0..self.count;
        match f {
            Formula::Atom { relation, args } => {
                let rel = self.a.relation(relation).expect("checked interpreted");
                all.map(|s| rel.contains(&args.iter().map(|t| self.term(t, s)).collect::<Vec<_>>())).collect()
            }
            Formula::Eq(l, r) => all.map(|s| self.term(l, s) == self.term(r, s)).collect(),
            Formula::Not(g) => self.table(g).into_iter().map(|b| !b).collect(),
            Formula::And(l, r) => zip(self.table(l), self.table(r), |x, y| x && y),
            Formula::Or(l, r) => zip(self.table(l), self.table(r), |x, y| x || y),
            Formula::Implies(l, r) => zip(self.table(l), self.table(r), |x, y| !x || y),
            Formula::Iff(l, r) => zip(self.table(l), self.table(r), |x, y| x == y),
            Formula::Forall(v, g) | Formula::Exists(v, g) => {
                let body = self.table(g);
                let i = self.vars.iter().position(|w| w == v).unwrap();
                let forall = matches!(f, Formula::Forall(..));
                all.map(|s| {
                    let mut values = (0..self.size).map(|e| body[self.with(s, i, e)]);
                    if forall {
                        values.all(|b| b)
                    } else {
                        values.any(|b| b)
                    }
                })
                .collect()
            }
        }
    }
}

fn zip(l: Vec<bool>, r: Vec<bool>, op: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    l.into_iter().zip(r).map(|(x, y)| op(x, y)).collect()
}

/// Truth of a sentence, false when it mentions a symbol `a` lacks.
pub fn oracle_eval(a: &Structure, f: &Formula) -> bool {
    if !symbols_interpreted(a, f) {
        return false;
    }
    let mut vars = Vec::new();
    bound_vars(f, &mut vars);
    let size = a.size();
    let count = size.pow(vars.len() as u32);
    Table { a, vars, size, count }.table(f)[0]
}

/// First index of `structures` where `f` holds, provided it holds at the end.
pub fn oracle_norm<'a>(structures: impl IntoIterator<Item = &'a Structure>, f: &Formula) -> Option<usize> {
    let truth: Vec<bool> = structures.into_iter().map(|a| oracle_eval(a, f)).collect();
    if *truth.last()? {
        truth.iter().position(|&b| b)
    } else {
        None
    }
}

/// Complexity recomputed from scratch: smallest norm over the collection.
pub fn oracle_complexity(coll: &UpdateCollection, f: &Formula) -> u64 {
    coll.updates().iter().filter_map(|u| oracle_norm(u.structures(), f)).min().unwrap_or(0) as u64
}

// ---------------------------------------------------------------------------
// Countermodel oracle: every structure up to a size, listed explicitly.

fn formula_signature<'a>(fs: impl IntoIterator<Item = &'a Formula>) -> Vec<Symbol> {
    let mut all = BTreeSet::new();
    for f in fs {
        all.extend(symbols_of(f));
    }
    all.into_iter().collect()
}

/// Smallest structure (by size) that models `theory` and falsifies `f`.
pub fn naive_countermodel(theory: &[Formula], f: &Formula, max_size: usize) -> Option<Structure> {
    let symbols = formula_signature(theory.iter().chain([f]));
    let sig = Signature::from_symbols(symbols.clone()).unwrap();
    for n in 1..=max_size {
        let labels: Vec<String> = (0..n).map(|i| format!("m{i}")).collect();
        // one base-n digit per constant and one bit per possible tuple
        let total: u128 = symbols
            .iter()
            .map(|s| if s.arity == 0 { n as u128 } else { 1u128 << n.pow(s.arity as u32) })
            .product();
        assert!(total <= 1 << 22, "naive enumeration too large");
        for mut code in 0..total {
            let mut consts = Vec::new();
            let mut rels: BTreeMap<String, Vec<Vec<String>>> = BTreeMap::new();
            for s in &symbols {
                if s.arity == 0 {
                    consts.push((s.name.clone(), labels[(code % n as u128) as usize].clone()));
                    code /= n as u128;
                } else {
                    let entry = rels.entry(s.name.clone()).or_default();
                    for t in 0..n.pow(s.arity as u32) {
                        if code % 2 == 1 {
                            entry.push((0..s.arity).map(|k| labels[(t / n.pow(k as u32)) % n].clone()).collect());
                        }
                        code /= 2;
                    }
                }
            }
            let a = Structure::new(sig.clone(), labels.clone(), consts, rels).unwrap();
            if theory.iter().all(|t| oracle_eval(&a, t)) && !oracle_eval(&a, f) {
                return Some(a);
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Update oracle: every legal operation sequence, without the engine's
// successor enumeration.

fn fresh_names(labels: &[String], count: usize) -> Vec<String> {
    (1..).map(|i| format!("f{i}")).filter(|l| !labels.contains(l)).take(count).collect()
}

fn tuples(choices: &[ElementRef], arity: usize) -> Vec<Vec<ElementRef>> {
    let mut out: Vec<Vec<ElementRef>> = vec![Vec::new()];
    for _ in 0..arity {
        out = out
            .into_iter()
            .flat_map(|t| {
                choices.iter().map(move |c| {
                    let mut t = t.clone();
                    t.push(c.clone());
                    t
                })
            })
            .collect();
    }
    out
}

/// Every operation on the symbols of `d` and `f` that could conceivably be
/// legal; `apply` decides which are.
fn naive_candidates(d: &Database, f: &Formula, fresh: usize) -> Vec<Operation> {
    let a = d.structure();
    let mut symbols: BTreeMap<String, usize> = a.signature().symbols().map(|s| (s.name, s.arity)).collect();
    for s in symbols_of(f) {
        symbols.entry(s.name).or_insert(s.arity);
    }
    let labels: Vec<String> = a.domain().iter().map(|e| e.label.clone()).collect();
    let fresh = fresh_names(&labels, fresh);
    let mut refs: Vec<ElementRef> = labels.iter().cloned().map(ElementRef::Existing).collect();
    refs.extend(fresh.iter().cloned().map(ElementRef::Fresh));
    let existing: Vec<ElementRef> = labels.iter().cloned().map(ElementRef::Existing).collect();
    let mut ops = Vec::new();
    for (name, arity) in symbols {
        if arity == 0 {
            for r in &refs {
                ops.push(Operation::InsertConstant { name: name.clone(), target: r.clone() });
            }
            for l in &labels {
                ops.push(Operation::ReinterpretConstant { name: name.clone(), target: l.clone() });
            }
            ops.push(Operation::DropConstant { name: name.clone() });
        } else {
            for args in tuples(&refs, arity) {
                ops.push(Operation::InsertTuple { relation: name.clone(), args });
            }
            for t in tuples(&existing, arity) {
                let tuple = t
                    .into_iter()
                    .map(|r| match r {
                        ElementRef::Existing(l) | ElementRef::Fresh(l) => l,
                    })
                    .collect();
                ops.push(Operation::RemoveTuple { relation: name.clone(), tuple });
            }
            ops.push(Operation::DropRelation { relation: name.clone() });
        }
    }
    ops
}

/// Length of the shortest legal operation sequence from `d` reaching a
/// structure where `f` holds, if one exists within `depth` steps.
pub fn oracle_min_norm(d: &Database, f: &Formula, depth: usize, fresh: usize, mode: OpMode) -> Option<usize> {
    if oracle_eval(d.structure(), f) {
        return Some(0);
    }
    let mut seen: HashSet<String> = HashSet::from([write_database(d)]);
    let mut level = vec![d.clone()];
    for step in 1..=depth {
        let mut next = Vec::new();
        for db in &level {
            for op in naive_candidates(db, f, fresh) {
                let Ok(applied) = apply(db, &op, mode) else { continue };
                if oracle_eval(applied.database.structure(), f) {
                    return Some(step);
                }
                if step < depth && seen.insert(write_database(&applied.database)) {
                    next.push(applied.database);
                }
            }
        }
        level = next;
    }
    None
}

// ---------------------------------------------------------------------------
// Random instances.

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Symbols outside every generated base signature.
pub fn extension_symbols() -> Vec<Symbol> {
    vec![Symbol::constant("k"), Symbol::relation("Z", 1)]
}

pub fn random_signature(rng: &mut impl Rng) -> Signature {
    let mut symbols = vec![Symbol::relation("P", 1)];
    if rng.gen_bool(0.6) {
        symbols.push(Symbol::relation("Q", 1));
    }
    if rng.gen_bool(0.7) {
        symbols.push(Symbol::relation("R", 2));
    }
    if rng.gen_bool(0.5) {
        symbols.push(Symbol::constant("c"));
    }
    Signature::from_symbols(symbols).unwrap()
}

pub fn random_structure(rng: &mut impl Rng, sig: &Signature, max_size: usize) -> Structure {
    let n = rng.gen_range(1..=max_size);
    let labels: Vec<String> = (0..n).map(|i| format!("d{i}")).collect();
    let consts: Vec<(String, String)> =
        sig.constants().map(|c| (c.to_string(), labels[rng.gen_range(0..n)].clone())).collect();
    let rels: Vec<(String, Vec<Vec<String>>)> = sig
        .relations()
        .map(|(r, arity)| {
            let all = tuples(&labels.iter().cloned().map(ElementRef::Existing).collect::<Vec<_>>(), arity);
            let chosen = all
                .into_iter()
                .filter(|_| rng.gen_bool(0.4))
                .map(|t| {
                    t.into_iter()
                        .map(|r| match r {
                            ElementRef::Existing(l) | ElementRef::Fresh(l) => l,
                        })
                        .collect()
                })
                .collect();
            (r.to_string(), chosen)
        })
        .collect();
    Structure::new(sig.clone(), labels, consts, rels).unwrap()
}

const VARS: [&str; 3] = ["x", "y", "z"];

fn random_atom(rng: &mut impl Rng, sig: &Signature, scope: &[String]) -> Option<Formula> {
    let mut terms: Vec<Term> = scope.iter().map(|v| Term::var(v.clone())).collect();
    terms.extend(sig.constants().map(Term::constant));
    if terms.is_empty() {
        return None;
    }
    let rels: Vec<(&str, usize)> = sig.relations().collect();
    if rels.is_empty() || rng.gen_bool(0.15) {
        return Some(Formula::eq(terms.choose(rng).unwrap().clone(), terms.choose(rng).unwrap().clone()));
    }
    let (r, arity) = *rels.choose(rng).unwrap();
    Some(Formula::atom(r, (0..arity).map(|_| terms.choose(rng).unwrap().clone()).collect()))
}

fn random_formula(rng: &mut impl Rng, sig: &Signature, depth: usize, scope: &mut Vec<String>) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        if let Some(a) = random_atom(rng, sig, scope) {
            return a;
        }
    }
    if depth == 0 {
        // nothing to apply a relation to yet
        let forall = rng.gen_bool(0.5);
        return quantify(rng, sig, depth, scope, forall);
    }
    match rng.gen_range(0..7) {
        0 => Formula::not(random_formula(rng, sig, depth - 1, scope)),
        1 => Formula::and(random_formula(rng, sig, depth - 1, scope), random_formula(rng, sig, depth - 1, scope)),
        2 => Formula::or(random_formula(rng, sig, depth - 1, scope), random_formula(rng, sig, depth - 1, scope)),
        3 => Formula::implies(random_formula(rng, sig, depth - 1, scope), random_formula(rng, sig, depth - 1, scope)),
        4 => Formula::iff(random_formula(rng, sig, depth - 1, scope), random_formula(rng, sig, depth - 1, scope)),
        5 => quantify(rng, sig, depth, scope, true),
        _ => quantify(rng, sig, depth, scope, false),
    }
}

fn quantify(rng: &mut impl Rng, sig: &Signature, depth: usize, scope: &mut Vec<String>, forall: bool) -> Formula {
    let v = VARS[scope.len() % VARS.len()].to_string();
    scope.push(v.clone());
    let body = random_formula(rng, sig, depth.saturating_sub(1), scope);
    scope.pop();
    if forall {
        Formula::forall(v, body)
    } else {
        Formula::exists(v, body)
    }
}

pub fn random_sentence(rng: &mut impl Rng, sig: &Signature, depth: usize) -> Formula {
    random_formula(rng, sig, depth, &mut Vec::new())
}

/// A conjunction of two or three shallow sentences, which usually takes
/// several operations to reach.
pub fn random_goal(rng: &mut impl Rng, sig: &Signature) -> Formula {
    let parts = (0..rng.gen_range(2..=3)).map(|_| random_sentence(rng, sig, 1));
    Formula::conjunction(parts).unwrap()
}

/// A correct database whose theory consists of up to three random
/// sentences true in a random structure.
pub fn random_database(rng: &mut impl Rng) -> Database {
    let sig = random_signature(rng);
    let a = random_structure(rng, &sig, 3);
    let wanted = rng.gen_range(0..=3);
    let mut theory = Vec::new();
    for _ in 0..12 {
        if theory.len() == wanted {
            break;
        }
        let f = random_sentence(rng, &sig, 3);
        if oracle_eval(&a, &f) && !theory.contains(&f) {
            theory.push(f);
        }
    }
    make_database(a, Theory::new(theory).unwrap()).unwrap()
}

/// A random walk of up to `max_len` legal operations from `d`.
pub fn random_update(rng: &mut impl Rng, d: &Database, max_len: usize, mode: OpMode, pool: &BTreeSet<Symbol>) -> Update {
    let len = rng.gen_range(0..=max_len);
    let mut ops = Vec::new();
    let mut cur = d.clone();
    for _ in 0..len {
        let succ = enumerate_successors(&cur, mode, 1, pool);
        let Some((op, next)) = succ.choose(rng).cloned() else { break };
        ops.push(op);
        cur = next;
    }
    Update::from_ops(d.clone(), ops, mode).unwrap()
}

pub fn random_collection(rng: &mut impl Rng, d: &Database, mode: OpMode, pool: &BTreeSet<Symbol>) -> UpdateCollection {
    let n = rng.gen_range(1..=3);
    UpdateCollection::new((0..n).map(|_| random_update(rng, d, 3, mode, pool)).collect()).unwrap()
}

/// A database, a collection of updates over it, and symbols the updates may
/// introduce beyond its signature.
pub struct Instance {
    pub name: String,
    pub database: Database,
    pub collection: UpdateCollection,
    pub extension: Vec<Symbol>,
}

impl Instance {
    pub fn signature(&self) -> &Signature {
        self.database.signature()
    }

    pub fn extended_signature(&self) -> Signature {
        let mut sig = self.signature().clone();
        for s in &self.extension {
            sig.insert(s.clone()).unwrap();
        }
        sig
    }
}

pub fn random_instance(seed: u64) -> Instance {
    let mut r = rng(seed);
    let database = random_database(&mut r);
    let mode = if r.gen_bool(0.5) { OpMode::Paper } else { OpMode::Strict };
    let extension = extension_symbols();
    let pool: BTreeSet<Symbol> = extension.iter().cloned().collect();
    let collection = random_collection(&mut r, &database, mode, &pool);
    Instance { name: format!("random #{seed}"), database, collection, extension }
}

/// D0 with the three updates of the informativity examples.
pub fn corpus_instance() -> Instance {
    let u = |s| corpus::update(s, OpMode::Paper).unwrap();
    let d0 = corpus::base_database();
    let collection = UpdateCollection::new(vec![Update::singleton(d0.clone()), u(corpus::UPDATE_D), u(corpus::UPDATE_DPP)]).unwrap();
    Instance {
        name: "example collection".into(),
        database: d0,
        collection,
        extension: vec![Symbol::constant("b"), Symbol::relation("Z", 1)],
    }
}

pub fn corpus_formula(text: &str) -> Formula {
    seminfo::parse_formula(text, corpus::base_database().signature()).unwrap().formula
}

/// Two-element structure with constants naming both elements; its theory is
/// the full diagram plus a sentence saying there are exactly two elements.
pub fn categorical_instance(seed: u64) -> Instance {
    let sig = Signature::from_symbols([
        Symbol::constant("a"),
        Symbol::constant("b"),
        Symbol::relation("P", 1),
        Symbol::relation("R", 2),
    ])
    .unwrap();
    let structure = Structure::new(
        sig.clone(),
        ["p0", "p1"],
        [("a".to_string(), "p0".to_string()), ("b".to_string(), "p1".to_string())],
        [("P".to_string(), vec![vec!["p0".to_string()]]), ("R".to_string(), vec![vec!["p0".to_string(), "p1".to_string()]])],
    )
    .unwrap();
    let theory: Vec<Formula> = [
        "exists x exists y (x != y & forall z (z = x | z = y))",
        "a != b",
        "P(a)",
        "~P(b)",
        "R(a,b)",
        "~R(a,a)",
        "~R(b,a)",
        "~R(b,b)",
    ]
    .iter()
    .map(|s| seminfo::parse_formula(s, &sig).unwrap().formula)
    .collect();
    let database = make_database(structure, Theory::new(theory).unwrap()).unwrap();
    let mut r = rng(seed);
    let extension = extension_symbols();
    let pool: BTreeSet<Symbol> = extension.iter().cloned().collect();
    let collection = random_collection(&mut r, &database, OpMode::Strict, &pool);
    Instance { name: format!("categorical #{seed}"), database, collection, extension }
}

// ---------------------------------------------------------------------------
// Formula families.

pub fn tautology_over(rng: &mut impl Rng, sig: &Signature) -> Formula {
    let p = random_sentence(rng, sig, 2);
    match rng.gen_range(0..3) {
        0 => Formula::or(p.clone(), Formula::not(p)),
        1 => Formula::implies(p.clone(), p),
        _ => Formula::not(Formula::and(p.clone(), Formula::not(p))),
    }
}

pub fn contradiction_over(rng: &mut impl Rng, sig: &Signature) -> Formula {
    let p = random_sentence(rng, sig, 2);
    if rng.gen_bool(0.5) {
        Formula::and(p.clone(), Formula::not(p))
    } else {
        Formula::not(Formula::implies(p.clone(), p))
    }
}

/// A tautology mentioning at least one extension symbol.
pub fn extended_tautology(rng: &mut impl Rng, inst: &Instance) -> Formula {
    let ext = inst.extended_signature();
    loop {
        let f = tautology_over(rng, &ext);
        if symbols_of(&f).iter().any(|s| inst.extension.contains(s)) {
            return f;
        }
    }
}

fn signature_of(fs: &[Formula]) -> Signature {
    Signature::from_symbols(formula_signature(fs)).unwrap()
}

/// Premises over the base signature and a conclusion they entail, built
/// only from the premises' symbols.
pub fn valid_deduction(rng: &mut impl Rng, sig: &Signature) -> Deduction {
    let premises: Vec<Formula> = (0..rng.gen_range(1..=2)).map(|_| random_sentence(rng, sig, 2)).collect();
    let sub = signature_of(&premises);
    let first = premises[0].clone();
    let conclusion = match rng.gen_range(0..4) {
        0 => first,
        1 => Formula::or(first, random_sentence(rng, &sub, 2)),
        2 => Formula::not(Formula::not(first)),
        _ => Formula::conjunction(premises.iter().cloned()).unwrap(),
    };
    Deduction::new(premises, Vec::new(), conclusion).unwrap()
}

pub fn random_deduction(rng: &mut impl Rng, sig: &Signature) -> Deduction {
    if rng.gen_bool(0.5) {
        return valid_deduction(rng, sig);
    }
    let premises: Vec<Formula> = (0..rng.gen_range(0..=2)).map(|_| random_sentence(rng, sig, 2)).collect();
    Deduction::new(premises, Vec::new(), random_sentence(rng, sig, 2)).unwrap()
}

// ---------------------------------------------------------------------------
// Property checks. Each returns whether the instance exercised the
// property's hypothesis, or a description of the failure.

pub type Check = Result<bool, String>;

fn fail<T>(inst: &Instance, what: impl std::fmt::Display) -> Result<T, String> {
    Err(format!("{}: {what}", inst.name))
}

fn holds(v: &Verdict) -> bool {
    matches!(v, Verdict::HoldsUpToBound(_))
}

/// Tautologies over the base signature have complexity 0.
pub fn base_tautologies_have_zero_complexity(inst: &Instance, rng: &mut impl Rng, cfg: &BoundConfig) -> Check {
    let f = tautology_over(rng, inst.signature());
    if !holds(&is_tautology(&f, cfg)) {
        return fail(inst, format!("`{f}` not recognised as a tautology"));
    }
    let c = complexity(&inst.collection, &f);
    if !c.is_zero() || oracle_complexity(&inst.collection, &f) != 0 {
        return fail(inst, format!("C(`{f}`) = {c}"));
    }
    Ok(true)
}

/// Extended-signature tautologies have positive complexity once some update
/// satisfies them.
pub fn extended_tautologies_cost_an_update(inst: &Instance, rng: &mut impl Rng, cfg: &BoundConfig) -> Check {
    let f = extended_tautology(rng, inst);
    if !holds(&is_tautology(&f, cfg)) {
        return fail(inst, format!("`{f}` not recognised as a tautology"));
    }
    let satisfied = inst.collection.updates().iter().any(|u| is_satisfactory(u, &f));
    let c = complexity(&inst.collection, &f);
    if satisfied && c.is_zero() {
        return fail(inst, format!("C(`{f}`) = 0 although an update satisfies it"));
    }
    Ok(satisfied)
}

/// Formulas no update satisfies have complexity 0.
pub fn unreached_formulas_have_zero_complexity(inst: &Instance, rng: &mut impl Rng, _cfg: &BoundConfig) -> Check {
    let f = if rng.gen_bool(0.5) {
        contradiction_over(rng, &inst.extended_signature())
    } else {
        random_sentence(rng, &inst.extended_signature(), 2)
    };
    let satisfied = inst.collection.updates().iter().any(|u| is_satisfactory(u, &f));
    if !satisfied && !complexity(&inst.collection, &f).is_zero() {
        return fail(inst, format!("C(`{f}`) > 0 with no satisfactory update"));
    }
    Ok(!satisfied)
}

/// An update that does not reach the conclusion of a valid deduction does
/// not reach all of its premises either.
pub fn unreached_conclusion_leaves_a_premise_unreached(inst: &Instance, rng: &mut impl Rng, cfg: &BoundConfig) -> Check {
    let ded = valid_deduction(rng, inst.signature());
    if !holds(&is_valid_deduction(&ded, cfg)) {
        return fail(inst, format!("`{ded}` not recognised as valid"));
    }
    let mut exercised = false;
    for u in inst.collection.updates() {
        if is_satisfactory(u, ded.conclusion()) {
            continue;
        }
        exercised = true;
        if ded.premises().iter().all(|p| is_satisfactory(u, p)) {
            return fail(inst, format!("every premise of `{ded}` is satisfied but the conclusion is not"));
        }
    }
    Ok(exercised)
}

/// A premise-free deduction of a tautology has relevancy 0.
pub fn premise_free_tautologies_are_irrelevant(inst: &Instance, rng: &mut impl Rng, cfg: &BoundConfig) -> Check {
    let f = if rng.gen_bool(0.5) { tautology_over(rng, inst.signature()) } else { extended_tautology(rng, inst) };
    let ded = Deduction::new(Vec::new(), Vec::new(), f).unwrap();
    let r = relevancy(&inst.collection, &ded, cfg);
    if !r.value.is_zero() {
        return fail(inst, format!("R(`{ded}`) = {}", r.value));
    }
    Ok(true)
}

/// A deduction whose conclusion no update satisfies has relevancy 0.
pub fn unreached_conclusion_has_zero_relevancy(inst: &Instance, rng: &mut impl Rng, cfg: &BoundConfig) -> Check {
    let mut ded = random_deduction(rng, &inst.extended_signature());
    if rng.gen_bool(0.4) {
        let c = contradiction_over(rng, &inst.extended_signature());
        ded = Deduction::new(ded.premises().to_vec(), Vec::new(), c).unwrap();
    }
    let unreached = !inst.collection.updates().iter().any(|u| is_satisfactory(u, ded.conclusion()));
    if unreached {
        let r = relevancy(&inst.collection, &ded, cfg);
        if !r.value.is_zero() {
            return fail(inst, format!("R(`{ded}`) = {} with the conclusion never reached", r.value));
        }
    }
    Ok(unreached)
}

/// For sentences the base structure interprets, I = C. When C > 0 the base
/// structure itself refutes the sentence, which settles relevancy 1.
pub fn informativity_equals_complexity(inst: &Instance, rng: &mut impl Rng, cfg: &BoundConfig) -> Check {
    // prefer a sentence the base falsifies so that C > 0 is possible
    let base = inst.database.structure();
    let candidates: Vec<Formula> = (0..6).map(|_| random_sentence(rng, inst.signature(), 3)).collect();
    let f = candidates.iter().find(|f| !oracle_eval(base, f)).unwrap_or(&candidates[0]).clone();
    let i = informativity_of_proposition(&inst.collection, &f, cfg);
    let c = complexity(&inst.collection, &f);
    if c.numer() != oracle_complexity(&inst.collection, &f) {
        return fail(inst, format!("C(`{f}`) = {c} differs from the recomputed value"));
    }
    if i.value != c {
        return fail(inst, format!("I(`{f}`) = {} but C = {c}", i.value));
    }
    if c.is_zero() {
        return Ok(false);
    }
    if i.relevancy.value.numer() != 1 || i.relevancy.value.denom() != 1 || i.caveats().iter().any(|c| c.is_unknown()) {
        return fail(inst, format!("R(`{f}`) = {} with C = {c}", i.relevancy.value));
    }
    let base = inst.database.structure();
    let seeded = cfg.seeded([base.clone()]);
    match entails(inst.database.theory(), &f, &seeded) {
        Verdict::Fails(w) if *w == *base => {}
        other => return fail(inst, format!("the base structure does not settle `{f}`: {other}")),
    }
    if !inst.database.theory().sentences().iter().all(|t| oracle_eval(base, t)) || oracle_eval(base, &f) {
        return fail(inst, format!("the base structure is not a countermodel for `{f}`"));
    }
    Ok(true)
}

/// Contradictions carry no information, over any signature.
pub fn contradictions_are_uninformative(inst: &Instance, rng: &mut impl Rng, cfg: &BoundConfig) -> Check {
    let f = contradiction_over(rng, &inst.extended_signature());
    let i = informativity_of_proposition(&inst.collection, &f, cfg);
    if !i.value.is_zero() {
        return fail(inst, format!("I(`{f}`) = {}", i.value));
    }
    Ok(true)
}

/// Tautologies over the base signature carry no information.
pub fn base_tautologies_are_uninformative(inst: &Instance, rng: &mut impl Rng, cfg: &BoundConfig) -> Check {
    let f = tautology_over(rng, inst.signature());
    let i = informativity_of_proposition(&inst.collection, &f, cfg);
    if !i.value.is_zero() {
        return fail(inst, format!("I(`{f}`) = {}", i.value));
    }
    Ok(true)
}

/// Under a categorical theory no sentence over the base signature is ever
/// relevant, whatever the deduction.
pub fn categorical_theory_makes_nothing_relevant(inst: &Instance, rng: &mut impl Rng, cfg: &BoundConfig) -> Check {
    let ded = random_deduction(rng, inst.signature());
    let r = relevancy(&inst.collection, &ded, cfg);
    if !r.value.is_zero() {
        return fail(inst, format!("R(`{ded}`) = {} under a categorical theory", r.value));
    }
    for u in inst.collection.updates() {
        let members = ded.support().members;
        let rel = relevant_propositions(u, &members, cfg);
        if !rel.is_empty() {
            return fail(inst, format!("`{}` relevant under a categorical theory", rel[0]));
        }
    }
    Ok(r.chosen_update.is_some() || holds(&is_valid_deduction(&ded, cfg)))
}

/// Fixed checks on the example collection for the theorems that assert
/// existence rather than a universal property.
pub fn corpus_existence_checks(cfg: &BoundConfig) -> Result<(), String> {
    let inst = corpus_instance();
    let coll = &inst.collection;
    let taut = corpus_formula("E(a) | ~E(a)");
    let i = informativity_of_proposition(coll, &taut, cfg);
    if !i.value.is_zero() {
        return Err(format!("I(E(a) | ~E(a)) = {}", i.value));
    }
    let ext = corpus_formula("E(b) | ~E(b)");
    if !holds(&is_tautology(&ext, cfg)) || complexity(coll, &ext).is_zero() {
        return Err("no extended-signature tautology with C > 0".into());
    }
    let second = corpus::deduction(corpus::SECOND_DEDUCTION);
    let i_ded = seminfo::informativity(coll, &second, cfg);
    let i_cond = informativity_of_proposition(coll, &seminfo::associated_conditional(&second), cfg);
    if i_ded.value.to_string() != "8/3" || !i_cond.value.is_zero() {
        return Err(format!("deduction I = {}, conditional I = {}", i_ded.value, i_cond.value));
    }
    let support = second.support().members;
    let c = complexity_of_set(coll, &support);
    let oracle: u64 = support.iter().map(|f| oracle_complexity(coll, f)).sum();
    if c.numer() != oracle || c.denom() != 1 {
        return Err(format!("support complexity {c} differs from the recomputed {oracle}"));
    }
    Ok(())
}

pub type Suite = fn(&Instance, &mut ChaCha8Rng, &BoundConfig) -> Check;

/// Universal properties checked on random instances and the example collection.
pub const SUITES: [(&str, Suite); 9] = [
    ("base tautologies have zero complexity", base_tautologies_have_zero_complexity),
    ("extended tautologies cost an update", extended_tautologies_cost_an_update),
    ("unreached formulas have zero complexity", unreached_formulas_have_zero_complexity),
    ("unreached conclusion leaves a premise unreached", unreached_conclusion_leaves_a_premise_unreached),
    ("premise-free tautologies are irrelevant", premise_free_tautologies_are_irrelevant),
    ("unreached conclusion has zero relevancy", unreached_conclusion_has_zero_relevancy),
    ("informativity equals complexity", informativity_equals_complexity),
    ("base tautologies are uninformative", base_tautologies_are_uninformative),
    ("contradictions are uninformative", contradictions_are_uninformative),
];
