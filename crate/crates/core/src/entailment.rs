//! Bounded consequence checking by countermodel search.
//!
//! A countermodel for `T ⊨ f` is a structure that satisfies every sentence of
//! `T` and falsifies `f`. Seed structures are tried first, then every domain
//! size from 1 up to the bound. Per size, constants are assigned in
//! first-use order (constant `k` takes an element at most one past the
//! largest used so far), the sentences are grounded into a propositional
//! graph, and relation atoms are decided false-first in a fixed order with
//! three-valued pruning.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::database::Theory;
use crate::metrics::Deduction;
use crate::semantics::{Structure, Tuple};
use crate::syntax::{symbols_of, Formula, Signature, Term};
use crate::update::holds;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// No countermodel with at most this many elements.
    HoldsUpToBound(usize),
    /// A model of the theory in which the formula is false.
    Fails(Box<Structure>),
    Unknown(String),
}

impl Verdict {
    pub fn fails(&self) -> bool {
        matches!(self, Verdict::Fails(_))
    }

    pub fn witness(&self) -> Option<&Structure> {
        match self {
            Verdict::Fails(w) => Some(w),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::HoldsUpToBound(n) => write!(f, "holds up to domain size {n}"),
            Verdict::Fails(w) => write!(f, "fails; countermodel of size {}", w.size()),
            Verdict::Unknown(why) => write!(f, "unknown: {why}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundConfig {
    pub max_domain: usize,
    /// Structures checked before any enumeration.
    pub seed_structures: Vec<Structure>,
    /// Search nodes allowed per query before giving up with `Unknown`.
    pub max_nodes: u64,
}

impl Default for BoundConfig {
    fn default() -> Self {
        BoundConfig { max_domain: 4, seed_structures: Vec::new(), max_nodes: 5_000_000 }
    }
}

impl BoundConfig {
    pub fn with_bound(max_domain: usize) -> Self {
        BoundConfig { max_domain, ..BoundConfig::default() }
    }

    pub fn seeded(&self, seeds: impl IntoIterator<Item = Structure>) -> Self {
        let mut cfg = self.clone();
        cfg.seed_structures.extend(seeds);
        cfg
    }
}

pub fn entails(t: &Theory, f: &Formula, cfg: &BoundConfig) -> Verdict {
    if !f.is_sentence() {
        return Verdict::Unknown(format!("`{f}` is not a sentence"));
    }
    let sig = match t.signature().and_then(|s| s.union(&Signature::from_symbols(symbols_of(f))?)) {
        Ok(s) => s,
        Err(e) => return Verdict::Unknown(e.to_string()),
    };
    for seed in &cfg.seed_structures {
        let covers = sig.symbols().all(|s| seed.interprets_symbol(&s));
        if covers && t.sentences().iter().all(|p| holds(seed, p)) && !holds(seed, f) {
            return Verdict::Fails(Box::new(seed.clone()));
        }
    }
    let mut budget = cfg.max_nodes;
    for n in 1..=cfg.max_domain {
        match find_countermodel(&sig, t.sentences(), f, n, &mut budget) {
            Search::Found(w) => return Verdict::Fails(Box::new(w)),
            Search::Exhausted => {}
            Search::OutOfBudget => {
                return Verdict::Unknown(format!("search budget of {} nodes used up at domain size {n}", cfg.max_nodes))
            }
        }
    }
    Verdict::HoldsUpToBound(cfg.max_domain)
}

pub fn is_tautology(f: &Formula, cfg: &BoundConfig) -> Verdict {
    entails(&Theory::empty(), f, cfg)
}

/// Whether the premises entail the conclusion.
pub fn is_valid_deduction(ded: &Deduction, cfg: &BoundConfig) -> Verdict {
    match Theory::new(ded.premises().iter().cloned()) {
        Ok(t) => entails(&t, ded.conclusion(), cfg),
        Err(e) => Verdict::Unknown(e.to_string()),
    }
}

enum Search {
    Found(Structure),
    Exhausted,
    OutOfBudget,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Node {
    True,
    False,
    Atom(usize),
    Not(usize),
    And(Vec<usize>),
    Or(Vec<usize>),
    Iff(usize, usize),
}

const TRUE: usize = 0;
const FALSE: usize = 1;

/// Hash-consed propositional graph. Children always precede their parents.
struct Graph {
    nodes: Vec<Node>,
    memo: HashMap<Node, usize>,
}

impl Graph {
    fn new() -> Self {
        let mut g = Graph { nodes: Vec::new(), memo: HashMap::new() };
        g.intern(Node::True);
        g.intern(Node::False);
        g
    }

    fn intern(&mut self, n: Node) -> usize {
        if let Some(&i) = self.memo.get(&n) {
            return i;
        }
        self.nodes.push(n.clone());
        self.memo.insert(n, self.nodes.len() - 1);
        self.nodes.len() - 1
    }

    fn not(&mut self, a: usize) -> usize {
        match self.nodes[a] {
            Node::True => FALSE,
            Node::False => TRUE,
            Node::Not(x) => x,
            _ => self.intern(Node::Not(a)),
        }
    }

    fn junction(&mut self, items: Vec<usize>, conj: bool) -> usize {
        let (unit, zero) = if conj { (TRUE, FALSE) } else { (FALSE, TRUE) };
        let mut kept: Vec<usize> = Vec::new();
        for i in items {
            if i == zero {
                return zero;
            }
            if i != unit && !kept.contains(&i) {
                kept.push(i);
            }
        }
        match kept.len() {
            0 => unit,
            1 => kept[0],
            _ if conj => self.intern(Node::And(kept)),
            _ => self.intern(Node::Or(kept)),
        }
    }

    fn iff(&mut self, a: usize, b: usize) -> usize {
        match (a, b) {
            _ if a == b => TRUE,
            (TRUE, x) | (x, TRUE) => x,
            (FALSE, x) | (x, FALSE) => self.not(x),
            _ => self.intern(Node::Iff(a, b)),
        }
    }
}

/// Relation atoms of one domain size, numbered by relation name and then
/// lexicographic tuple.
struct Atoms {
    size: usize,
    offsets: BTreeMap<String, (usize, usize)>,
    total: usize,
}

impl Atoms {
    fn new(sig: &Signature, size: usize) -> Self {
        let mut offsets = BTreeMap::new();
        let mut total = 0;
        for (r, arity) in sig.relations() {
            offsets.insert(r.to_string(), (total, arity));
            total += size.pow(arity as u32);
        }
        Atoms { size, offsets, total }
    }

    fn index(&self, relation: &str, tuple: &[usize]) -> usize {
        let (offset, _) = self.offsets[relation];
        offset + tuple.iter().fold(0, |acc, &e| acc * self.size + e)
    }

    fn decode(&self, atom: usize) -> (&str, Tuple) {
        let (name, &(offset, arity)) = self
            .offsets
            .iter()
            .rev()
            .find(|(_, &(o, _))| o <= atom)
            .expect("atom index in range");
        let mut rest = atom - offset;
        let mut t = vec![0; arity];
        for slot in t.iter_mut().rev() {
            *slot = rest % self.size;
            rest /= self.size;
        }
        (name, t)
    }
}

struct Grounder<'a> {
    graph: Graph,
    atoms: &'a Atoms,
    consts: &'a BTreeMap<String, usize>,
    env: Vec<(String, usize)>,
}

impl Grounder<'_> {
    fn term(&self, t: &Term) -> usize {
        match t {
            Term::Var(v) => self.env.iter().rev().find(|(n, _)| n == v).expect("sentence").1,
            Term::Const(c) => self.consts[c],
        }
    }

    fn ground(&mut self, f: &Formula) -> usize {
        match f {
            Formula::Atom { relation, args } => {
                let t: Vec<usize> = args.iter().map(|a| self.term(a)).collect();
                let i = self.atoms.index(relation, &t);
                self.graph.intern(Node::Atom(i))
            }
            Formula::Eq(l, r) => {
                if self.term(l) == self.term(r) {
                    TRUE
                } else {
                    FALSE
                }
            }
            Formula::Not(g) => {
                let g = self.ground(g);
                self.graph.not(g)
            }
            Formula::And(l, r) => {
                let (l, r) = (self.ground(l), self.ground(r));
                self.graph.junction(vec![l, r], true)
            }
            Formula::Or(l, r) => {
                let (l, r) = (self.ground(l), self.ground(r));
                self.graph.junction(vec![l, r], false)
            }
            Formula::Implies(l, r) => {
                let l = self.ground(l);
                let nl = self.graph.not(l);
                let r = self.ground(r);
                self.graph.junction(vec![nl, r], false)
            }
            Formula::Iff(l, r) => {
                let (l, r) = (self.ground(l), self.ground(r));
                self.graph.iff(l, r)
            }
            Formula::Forall(v, body) | Formula::Exists(v, body) => {
                let mut items = Vec::with_capacity(self.atoms.size);
                for e in 0..self.atoms.size {
                    self.env.push((v.clone(), e));
                    items.push(self.ground(body));
                    self.env.pop();
                }
                self.graph.junction(items, matches!(f, Formula::Forall(..)))
            }
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Tri {
    F,
    T,
    U,
}

struct Solver<'a> {
    nodes: &'a [Node],
    order: Vec<usize>,
    assign: Vec<Option<bool>>,
    values: Vec<Tri>,
    budget: &'a mut u64,
}

enum Outcome {
    Sat,
    Unsat,
    Budget,
}

impl Solver<'_> {
    fn root_value(&mut self) -> Tri {
        for i in 0..self.nodes.len() {
            let v = match &self.nodes[i] {
                Node::True => Tri::T,
                Node::False => Tri::F,
                Node::Atom(a) => match self.assign[*a] {
                    Some(true) => Tri::T,
                    Some(false) => Tri::F,
                    None => Tri::U,
                },
                Node::Not(x) => match self.values[*x] {
                    Tri::T => Tri::F,
                    Tri::F => Tri::T,
                    Tri::U => Tri::U,
                },
                Node::And(xs) => {
                    let mut v = Tri::T;
                    for &x in xs {
                        match self.values[x] {
                            Tri::F => {
                                v = Tri::F;
                                break;
                            }
                            Tri::U => v = Tri::U,
                            Tri::T => {}
                        }
                    }
                    v
                }
                Node::Or(xs) => {
                    let mut v = Tri::F;
                    for &x in xs {
                        match self.values[x] {
                            Tri::T => {
                                v = Tri::T;
                                break;
                            }
                            Tri::U => v = Tri::U,
                            Tri::F => {}
                        }
                    }
                    v
                }
                Node::Iff(a, b) => match (self.values[*a], self.values[*b]) {
                    (Tri::U, _) | (_, Tri::U) => Tri::U,
                    (x, y) if x == y => Tri::T,
                    _ => Tri::F,
                },
            };
            self.values[i] = v;
        }
        self.values[self.nodes.len() - 1]
    }

    fn search(&mut self, k: usize) -> Outcome {
        if *self.budget == 0 {
            return Outcome::Budget;
        }
        *self.budget -= 1;
        match self.root_value() {
            Tri::F => Outcome::Unsat,
            Tri::T => Outcome::Sat,
            Tri::U => {
                let atom = self.order[k];
                for v in [false, true] {
                    self.assign[atom] = Some(v);
                    match self.search(k + 1) {
                        Outcome::Unsat => {}
                        other => return other,
                    }
                }
                self.assign[atom] = None;
                Outcome::Unsat
            }
        }
    }
}

/// Constant assignments in first-use order over `size` elements.
fn constant_assignments(count: usize, size: usize) -> Vec<Vec<usize>> {
    fn go(count: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == count {
            out.push(cur.clone());
            return;
        }
        let limit = cur.iter().max().map_or(0, |m| m + 1).min(size - 1);
        for e in 0..=limit {
            cur.push(e);
            go(count, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(count, size, &mut Vec::new(), &mut out);
    out
}

fn find_countermodel(sig: &Signature, theory: &[Formula], f: &Formula, size: usize, budget: &mut u64) -> Search {
    let atoms = Atoms::new(sig, size);
    let names: Vec<&str> = sig.constants().collect();
    for values in constant_assignments(names.len(), size) {
        let consts: BTreeMap<String, usize> = names.iter().map(|n| n.to_string()).zip(values).collect();
        let mut g = Grounder { graph: Graph::new(), atoms: &atoms, consts: &consts, env: Vec::new() };
        let mut parts: Vec<usize> = theory.iter().map(|p| g.ground(p)).collect();
        let goal = g.ground(f);
        parts.push(g.graph.not(goal));
        let root = g.graph.junction(parts, true);
        // make the root the last node so evaluation ends on it
        let mut nodes = g.graph.nodes;
        if root != nodes.len() - 1 {
            nodes.push(Node::And(vec![root]));
        }
        let mut order: Vec<usize> = nodes
            .iter()
            .filter_map(|n| if let Node::Atom(a) = n { Some(*a) } else { None })
            .collect();
        order.sort_unstable();
        let mut solver = Solver {
            nodes: &nodes,
            order,
            assign: vec![None; atoms.total],
            values: vec![Tri::U; nodes.len()],
            budget,
        };
        match solver.search(0) {
            Outcome::Sat => return Search::Found(witness(sig, &atoms, &consts, &solver.assign)),
            Outcome::Budget => return Search::OutOfBudget,
            Outcome::Unsat => {}
        }
    }
    Search::Exhausted
}

fn witness(sig: &Signature, atoms: &Atoms, consts: &BTreeMap<String, usize>, assign: &[Option<bool>]) -> Structure {
    let label = |e: usize| format!("e{e}");
    let mut rels: BTreeMap<String, Vec<Vec<String>>> = BTreeMap::new();
    for (i, v) in assign.iter().enumerate() {
        if *v == Some(true) {
            let (name, t) = atoms.decode(i);
            rels.entry(name.to_string()).or_default().push(t.into_iter().map(label).collect());
        }
    }
    Structure::new(
        sig.clone(),
        (0..atoms.size).map(label),
        consts.iter().map(|(c, &e)| (c.clone(), label(e))),
        rels,
    )
    .expect("witness is well formed")
}

/// Every symbol a countermodel search for `t ⊨ f` interprets.
pub fn query_signature(t: &Theory, f: &Formula) -> Option<Signature> {
    t.signature().ok()?.union(&Signature::from_symbols(symbols_of(f)).ok()?).ok()
}
