//! Informational complexity, relevancy and semantic informativity.
//!
//! All values are exact nonnegative rationals. Complexity of a deduction is
//! the summed complexity of its support (premises plus conclusion, without
//! intermediate steps). Relevancy is computed on the update with the
//! smallest norm for the conclusion, ties going to the shorter update and
//! then to the earlier one in the collection.

use std::fmt;
use std::ops::{Add, Mul};

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::entailment::{entails, is_valid_deduction, BoundConfig, Verdict};
use crate::update::{is_satisfactory, norm, Update, UpdateCollection};
use crate::syntax::Formula;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MetricValue(Ratio<u64>);

impl MetricValue {
    pub fn zero() -> Self {
        MetricValue(Ratio::from_integer(0))
    }

    pub fn integer(n: u64) -> Self {
        MetricValue(Ratio::from_integer(n))
    }

    /// Panics if `denom` is zero.
    pub fn ratio(numer: u64, denom: u64) -> Self {
        MetricValue(Ratio::new(numer, denom))
    }

    pub fn numer(&self) -> u64 {
        *self.0.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.numer() == 0
    }
}

impl fmt::Display for MetricValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom() == 1 {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "{}/{}", self.numer(), self.denom())
        }
    }
}

impl std::str::FromStr for MetricValue {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || format!("`{s}` is not an integer or p/q");
        match s.split_once('/') {
            None => s.trim().parse().map(MetricValue::integer).map_err(|_| bad()),
            Some((p, q)) => {
                let p: u64 = p.trim().parse().map_err(|_| bad())?;
                let q: u64 = q.trim().parse().map_err(|_| bad())?;
                if q == 0 {
                    return Err(bad());
                }
                Ok(MetricValue::ratio(p, q))
            }
        }
    }
}

impl Serialize for MetricValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Add for MetricValue {
    type Output = MetricValue;
    fn add(self, rhs: Self) -> Self {
        MetricValue(self.0 + rhs.0)
    }
}

impl Mul for MetricValue {
    type Output = MetricValue;
    fn mul(self, rhs: Self) -> Self {
        MetricValue(self.0 * rhs.0)
    }
}

impl std::iter::Sum for MetricValue {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(MetricValue::zero(), Add::add)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("deduction member `{0}` is not a sentence")]
pub struct NotSentence(pub String);

/// Premises, intermediate steps and a conclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Deduction {
    premises: Vec<Formula>,
    steps: Vec<Formula>,
    conclusion: Formula,
}

impl Deduction {
    pub fn new(premises: Vec<Formula>, steps: Vec<Formula>, conclusion: Formula) -> Result<Self, NotSentence> {
        if let Some(f) = premises.iter().chain(&steps).chain([&conclusion]).find(|f| !f.is_sentence()) {
            return Err(NotSentence(f.to_string()));
        }
        Ok(Deduction { premises, steps, conclusion })
    }

    /// The one-line deduction `f ⊢ f`.
    pub fn of_proposition(f: Formula) -> Result<Self, NotSentence> {
        Deduction::new(vec![f.clone()], Vec::new(), f)
    }

    pub fn premises(&self) -> &[Formula] {
        &self.premises
    }

    pub fn steps(&self) -> &[Formula] {
        &self.steps
    }

    pub fn conclusion(&self) -> &Formula {
        &self.conclusion
    }

    pub fn support(&self) -> Support {
        let mut members: Vec<Formula> = Vec::new();
        for f in self.premises.iter().chain([&self.conclusion]) {
            if !members.contains(f) {
                members.push(f.clone());
            }
        }
        Support { members, conclusion: self.conclusion.clone() }
    }
}

impl fmt::Display for Deduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let all: Vec<String> = self
            .premises
            .iter()
            .chain(&self.steps)
            .chain([&self.conclusion])
            .map(|g| g.to_string())
            .collect();
        f.write_str(&all.join(", "))
    }
}

/// Premises and conclusion without duplicates, in order of first appearance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Support {
    pub members: Vec<Formula>,
    pub conclusion: Formula,
}

impl Support {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Premise conjunction implying the conclusion; the bare conclusion when
/// there are no premises.
pub fn associated_conditional(ded: &Deduction) -> Formula {
    match Formula::conjunction(ded.premises().iter().cloned()) {
        Some(p) => Formula::implies(p, ded.conclusion().clone()),
        None => ded.conclusion().clone(),
    }
}

/// Index and norm of the satisfactory update with the smallest norm, ties
/// broken by fewer databases and then collection order.
pub fn smallest_satisfactory(coll: &UpdateCollection, f: &Formula) -> Option<(usize, usize)> {
    coll.updates()
        .iter()
        .enumerate()
        .filter_map(|(i, u)| norm(u, f).ok().map(|n| (n, u.len(), i)))
        .min()
        .map(|(n, _, i)| (i, n))
}

pub fn complexity(coll: &UpdateCollection, f: &Formula) -> MetricValue {
    smallest_satisfactory(coll, f).map_or(MetricValue::zero(), |(_, n)| MetricValue::integer(n as u64))
}

/// Sum of the complexities of the distinct members.
pub fn complexity_of_set(coll: &UpdateCollection, fs: &[Formula]) -> MetricValue {
    let mut seen: Vec<&Formula> = Vec::new();
    for f in fs {
        if !seen.contains(&f) {
            seen.push(f);
        }
    }
    seen.into_iter().map(|f| complexity(coll, f)).sum()
}

/// Flags attached to a computed value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Caveat {
    /// Validity could not be settled; the deduction was taken to be valid.
    ValidityAssumed { reason: String },
    /// Validity or an entailment holds only up to this domain size.
    BoundedEntailment { bound: usize },
    /// A consequence check gave no answer; the member was counted as entailed.
    EntailmentUnknown { formula: String, reason: String },
    /// Some formula was evaluated in a structure lacking one of its symbols,
    /// where it counts as false.
    UninterpretedSymbols,
}

impl Caveat {
    /// Whether an undecided verdict was involved.
    pub fn is_unknown(&self) -> bool {
        matches!(self, Caveat::ValidityAssumed { .. } | Caveat::EntailmentUnknown { .. })
    }
}

impl fmt::Display for Caveat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Caveat::ValidityAssumed { reason } => write!(f, "validity assumed ({reason})"),
            Caveat::BoundedEntailment { bound } => write!(f, "entailment checked up to domain size {bound}"),
            Caveat::EntailmentUnknown { formula, reason } => write!(f, "entailment of `{formula}` unknown ({reason})"),
            Caveat::UninterpretedSymbols => f.write_str("uninterpreted symbols evaluated as false"),
        }
    }
}

fn push_caveat(caveats: &mut Vec<Caveat>, c: Caveat) {
    if !caveats.contains(&c) {
        caveats.push(c);
        caveats.sort();
    }
}

/// Formulas of `fs` that `u` satisfies and that have a countermodel over the
/// theory. The structures of `u` seed the countermodel search.
pub fn relevant_propositions(u: &Update, fs: &[Formula], cfg: &BoundConfig) -> Vec<Formula> {
    relevant_with_caveats(u, fs, cfg).0
}

fn relevant_with_caveats(u: &Update, fs: &[Formula], cfg: &BoundConfig) -> (Vec<Formula>, Vec<Caveat>) {
    let cfg = cfg.seeded(u.structures().cloned());
    let theory = u.base().theory();
    let mut out: Vec<Formula> = Vec::new();
    let mut caveats = Vec::new();
    for f in fs {
        if out.contains(f) || !is_satisfactory(u, f) {
            continue;
        }
        match entails(theory, f, &cfg) {
            Verdict::Fails(_) => out.push(f.clone()),
            Verdict::HoldsUpToBound(bound) => push_caveat(&mut caveats, Caveat::BoundedEntailment { bound }),
            Verdict::Unknown(reason) => {
                push_caveat(&mut caveats, Caveat::EntailmentUnknown { formula: f.to_string(), reason })
            }
        }
    }
    (out, caveats)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelevancyResult {
    pub value: MetricValue,
    /// Index in the collection of the update the value was computed on.
    pub chosen_update: Option<usize>,
    pub relevant: Vec<String>,
    pub support_size: usize,
    pub caveats: Vec<Caveat>,
}

pub fn relevancy(coll: &UpdateCollection, ded: &Deduction, cfg: &BoundConfig) -> RelevancyResult {
    let support = ded.support();
    let mut caveats = Vec::new();
    let zero = |caveats: Vec<Caveat>| RelevancyResult {
        value: MetricValue::zero(),
        chosen_update: None,
        relevant: Vec::new(),
        support_size: support.len(),
        caveats,
    };
    match is_valid_deduction(ded, cfg) {
        Verdict::Fails(_) => return zero(caveats),
        Verdict::HoldsUpToBound(bound) => push_caveat(&mut caveats, Caveat::BoundedEntailment { bound }),
        Verdict::Unknown(reason) => push_caveat(&mut caveats, Caveat::ValidityAssumed { reason }),
    }
    let Some((index, _)) = smallest_satisfactory(coll, ded.conclusion()) else {
        return zero(caveats);
    };
    let u = &coll.updates()[index];
    let (relevant, more) = relevant_with_caveats(u, &support.members, cfg);
    for c in more {
        push_caveat(&mut caveats, c);
    }
    RelevancyResult {
        value: MetricValue::ratio(relevant.len() as u64, support.len() as u64),
        chosen_update: Some(index),
        relevant: relevant.iter().map(|f| f.to_string()).collect(),
        support_size: support.len(),
        caveats,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InformativityResult {
    pub value: MetricValue,
    pub complexity: MetricValue,
    pub relevancy: RelevancyResult,
}

impl InformativityResult {
    pub fn caveats(&self) -> &[Caveat] {
        &self.relevancy.caveats
    }
}

/// Whether some member of the support is evaluated in a structure of the
/// collection that does not interpret all of its symbols.
pub fn uses_uninterpreted_symbols(coll: &UpdateCollection, fs: &[Formula]) -> bool {
    coll.updates()
        .iter()
        .flat_map(|u| u.structures())
        .any(|a| fs.iter().any(|f| !a.interprets(f)))
}

pub fn informativity(coll: &UpdateCollection, ded: &Deduction, cfg: &BoundConfig) -> InformativityResult {
    let support = ded.support();
    let c = complexity_of_set(coll, &support.members);
    let mut r = relevancy(coll, ded, cfg);
    if uses_uninterpreted_symbols(coll, &support.members) {
        push_caveat(&mut r.caveats, Caveat::UninterpretedSymbols);
    }
    InformativityResult { value: c * r.value, complexity: c, relevancy: r }
}

/// Informativity of the deduction `f ⊢ f`.
pub fn informativity_of_proposition(coll: &UpdateCollection, f: &Formula, cfg: &BoundConfig) -> InformativityResult {
    match Deduction::of_proposition(f.clone()) {
        Ok(d) => informativity(coll, &d, cfg),
        Err(e) => {
            let relevancy = RelevancyResult {
                value: MetricValue::zero(),
                chosen_update: None,
                relevant: Vec::new(),
                support_size: 1,
                caveats: vec![Caveat::ValidityAssumed { reason: e.to_string() }],
            };
            InformativityResult { value: MetricValue::zero(), complexity: MetricValue::zero(), relevancy }
        }
    }
}
