//! Recomputes every worked example and sets the results beside the values
//! printed in the paper and the values derived by hand from the definitions.

use std::fmt::Write as _;

use serde::Serialize;

use crate::database::Database;
use crate::entailment::{entails, BoundConfig};
use crate::metrics::{
    associated_conditional, complexity, informativity, informativity_of_proposition, relevancy, relevant_propositions,
    Caveat, Deduction, InformativityResult,
};
use crate::ops::{apply, infer_operation, OpMode, OpWarning};
use crate::parser::parse_formula;
use crate::semantics::Structure;
use crate::syntax::Formula;
use crate::update::{is_satisfactory, Update, UpdateCollection};

use super::corpus;
use super::fodb::interpretation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub description: String,
    pub computed: String,
    pub paper: Option<String>,
    pub derived: String,
    pub paper_match: Option<bool>,
    pub derived_match: bool,
    pub discrepancy: Option<String>,
    pub mode: OpMode,
    pub bound: usize,
    pub caveats: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiscrepancyEntry {
    pub case: String,
    pub paper: String,
    pub derived: String,
    pub computed: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub id: String,
    pub note: String,
    pub entries: Vec<DiscrepancyEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub cases: usize,
    pub derived_matches: usize,
    pub paper_matches: usize,
    pub paper_mismatches: usize,
    pub caveated: usize,
    pub unknown: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub mode: OpMode,
    pub bound: usize,
    pub cases: Vec<CaseResult>,
    pub discrepancies: Vec<Discrepancy>,
    pub summary: Summary,
}

impl Report {
    pub fn all_derived_match(&self) -> bool {
        self.summary.derived_matches == self.summary.cases
    }

    pub fn case(&self, id: &str) -> Option<&CaseResult> {
        self.cases.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "paper report  mode={}  bound={}", self.mode, self.bound);
        let _ = writeln!(out);
        let width = self.cases.iter().map(|c| c.id.len()).max().unwrap_or(0);
        for c in &self.cases {
            let status = if c.derived_match { "ok" } else { "MISMATCH" };
            let paper = match (&c.paper, c.paper_match) {
                (Some(p), Some(true)) => format!("paper {p}"),
                (Some(p), _) => format!("paper {p} (differs)"),
                (None, _) => "paper -".to_string(),
            };
            let _ = write!(out, "{:<width$}  {:<8}  computed {}  derived {}  {}", c.id, status, c.computed, c.derived, paper);
            if let Some(pd) = &c.discrepancy {
                let _ = write!(out, "  [{pd}]");
            }
            let _ = writeln!(out);
            if let Some(d) = &c.detail {
                let _ = writeln!(out, "{:width$}    {d}", "");
            }
            for cv in &c.caveats {
                let _ = writeln!(out, "{:width$}    caveat: {cv}", "");
            }
        }
        let _ = writeln!(out);
        let _ = writeln!(out, "discrepancies with the paper");
        for d in &self.discrepancies {
            let _ = writeln!(out, "{}  {}", d.id, d.note);
            for e in &d.entries {
                let _ = writeln!(out, "      {}: paper {}, derived {}, computed {}", e.case, e.paper, e.derived, e.computed);
            }
        }
        let s = &self.summary;
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "{} cases: {} match the derived values, {} match the paper, {} differ from the paper, {} carry caveats",
            s.cases, s.derived_matches, s.paper_matches, s.paper_mismatches, s.caveated
        );
        out
    }
}

const NOTES: [(&str, &str); 5] = [
    ("PD-1", "s = a is true in the last structure of the deletion update, which interprets s and a by the same element"),
    ("PD-2", "T has a one-element model with no streets, so T does not entail exists x E(x) and it is relevant"),
    ("PD-3", "I = C fails for the associated conditional: it is a tautology, so never relevant, yet has complexity 1"),
    ("PD-4", "both support members are true in D0, so the support has complexity 0 and I = 0"),
    ("PD-5", "~H(s,a) is already true at index 1, where s denotes A_ and (A_, A_) is not in H"),
];

struct Computed {
    value: String,
    caveats: Vec<String>,
    detail: Option<String>,
}

impl Computed {
    fn plain(value: impl Into<String>) -> Self {
        Computed { value: value.into(), caveats: Vec::new(), detail: None }
    }
}

struct Builder {
    mode: OpMode,
    bound: usize,
    cases: Vec<CaseResult>,
}

impl Builder {
    fn add(
        &mut self,
        id: &str,
        description: &str,
        computed: Result<Computed, String>,
        paper: Option<&str>,
        derived: &str,
        discrepancy: Option<&str>,
    ) {
        let (computed, caveats, detail) = match computed {
            Ok(c) => (c.value, c.caveats, c.detail),
            Err(e) => (format!("error: {e}"), Vec::new(), None),
        };
        self.cases.push(CaseResult {
            id: id.to_string(),
            description: description.to_string(),
            paper_match: paper.map(|p| p == computed),
            derived_match: computed == derived,
            computed,
            paper: paper.map(str::to_string),
            derived: derived.to_string(),
            discrepancy: discrepancy.map(str::to_string),
            mode: self.mode,
            bound: self.bound,
            caveats,
            detail,
        });
    }
}

fn set_text(fs: &[Formula]) -> String {
    let items: Vec<String> = fs.iter().map(|f| f.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn structure_text(a: &Structure) -> String {
    let labels: Vec<&str> = a.domain().iter().map(|e| e.label.as_str()).collect();
    format!("domain {{ {} }}  interpret {{ {} }}", labels.join(", "), interpretation(a))
}

fn step(from: &Database, to: &Structure, mode: OpMode) -> Computed {
    match infer_operation(from, to, mode) {
        Ok(op) => {
            let mut detail = op.to_string();
            if let Ok(applied) = apply(from, &op, mode) {
                for w in applied.warnings.iter().filter(|w| matches!(w, OpWarning::TheoryBreak { .. })) {
                    let _ = write!(detail, "; {w}");
                }
            }
            Computed { value: "accepted".into(), caveats: Vec::new(), detail: Some(detail) }
        }
        Err(r) => Computed { value: "rejected".into(), caveats: Vec::new(), detail: Some(r.to_string()) },
    }
}

fn caveat_texts(cs: &[Caveat]) -> Vec<String> {
    cs.iter().map(|c| c.to_string()).collect()
}

fn info(r: InformativityResult) -> Computed {
    Computed {
        value: r.value.to_string(),
        caveats: caveat_texts(r.caveats()),
        detail: Some(format!("C = {}, R = {}", r.complexity, r.relevancy.value)),
    }
}

type Loaded<T> = Result<T, String>;

/// Runs every example case in `mode` with the entailment bound of `cfg`.
pub fn run_paper_report(mode: OpMode, cfg: &BoundConfig) -> Report {
    let d0 = corpus::base_database();
    let sig = d0.signature().clone();
    let f = |s: &str| parse_formula(s, &sig).expect("corpus formula").formula;
    let load = |script: &str| -> Loaded<Update> { corpus::update(script, mode).map_err(|e| e.to_string()) };
    let u_d0 = Update::singleton(d0.clone());
    let u_d = load(corpus::UPDATE_D);
    let u_dp = load(corpus::UPDATE_DP);
    let u_dpp = load(corpus::UPDATE_DPP);
    let coll = |us: Vec<&Loaded<Update>>| -> Loaded<UpdateCollection> {
        let us: Vec<Update> = us.into_iter().cloned().collect::<Result<_, _>>()?;
        UpdateCollection::new(us).map_err(|e| e.to_string())
    };
    let single_d = coll(vec![&u_d]);
    let single_dp = coll(vec![&u_dp]);
    let small = coll(vec![&Ok(u_d0.clone()), &u_d]);
    let big = coll(vec![&Ok(u_d0.clone()), &u_d, &u_dpp]);
    let first: Deduction = corpus::deduction(corpus::FIRST_DEDUCTION);
    let second: Deduction = corpus::deduction(corpus::SECOND_DEDUCTION);

    let mut b = Builder { mode, bound: cfg.max_domain, cases: Vec::new() };

    b.add(
        "Ex2.2-D0-correct",
        "the example theory is true in A0",
        Ok(Computed::plain(if d0.correctness().holds() { "correct" } else { "incorrect" })),
        Some("correct"),
        "correct",
        None,
    );

    let d1: Loaded<Database> = u_d.as_ref().map(|u| u.last().clone()).map_err(|e| e.clone());
    b.add(
        "Ex2.4-D1-insertion",
        "inserting b onto A_ gives D1",
        Ok(step(&d0, &corpus::structure(corpus::A1), mode)),
        Some("accepted"),
        "accepted",
        None,
    );
    b.add(
        "Ex2.4-D2-insertion",
        "inserting E with a new element B_ into D1 gives D2",
        d1.clone().map(|d| step(&d, &corpus::structure(corpus::A2), mode)),
        Some("accepted"),
        "accepted",
        None,
    );
    b.add(
        "Ex2.4-Dstar-rejected",
        "b on a new element is not an insertion into D1",
        d1.clone().map(|d| step(&d, &corpus::structure(corpus::A_STAR), mode)),
        Some("rejected"),
        "rejected",
        None,
    );

    let d1p: Loaded<Database> = u_dp.as_ref().map(|u| u.databases()[1].clone()).map_err(|e| e.clone());
    b.add(
        "Ex2.6-D'1-deletion",
        "reinterpreting s onto A_ is a deletion from D0",
        Ok(step(&d0, &corpus::structure(corpus::A1_PRIME), mode)),
        Some("accepted"),
        "accepted",
        None,
    );
    b.add(
        "Ex2.6-D'2-deletion",
        "removing (S_, A_) from H is a deletion from D'1",
        d1p.clone().map(|d| step(&d, &corpus::structure(corpus::A2_PRIME), mode)),
        Some("accepted"),
        "accepted",
        None,
    );
    b.add(
        "Ex2.6-D'3-from-D'1-rejected",
        "the printed A'3 is not one deletion from D'1",
        d1p.map(|d| step(&d, &corpus::structure(corpus::A3_PRIME), mode)),
        Some("rejected"),
        "rejected",
        None,
    );

    let sat = |u: &Loaded<Update>, g: &str| -> Result<Computed, String> {
        let u = u.as_ref().map_err(|e| e.clone())?;
        Ok(Computed::plain(is_satisfactory(u, &f(g)).to_string()))
    };
    b.add("Ex3.2-D-sat-Eb", "(D0, D1) is satisfactory for E(b)", sat(&u_d, "E(b)"), Some("true"), "true", None);
    b.add("Ex3.2-D-sat-Hlb", "(D0, D1) is satisfactory for H(l,b)", sat(&u_d, "H(l,b)"), Some("true"), "true", None);
    b.add(
        "Ex3.2-D'-sat-Es&~Hsa",
        "the deletion update is satisfactory for E(s) & ~H(s,a)",
        sat(&u_dp, "E(s) & ~H(s,a)"),
        Some("true"),
        "true",
        None,
    );
    b.add(
        "Ex3.2-D'-sat-s=a",
        "the deletion update is satisfactory for s = a",
        sat(&u_dp, "s = a"),
        Some("false"),
        "true",
        Some("PD-1"),
    );

    let c = |coll: &Loaded<UpdateCollection>, g: &str| -> Result<Computed, String> {
        let coll = coll.as_ref().map_err(|e| e.clone())?;
        Ok(Computed::plain(complexity(coll, &f(g)).to_string()))
    };
    for (id, g) in [
        ("Ex3.4-C-Eb", "E(b)"),
        ("Ex3.4-C-Hlb", "H(l,b)"),
        ("Ex3.4-C-Eb&Hlb", "E(b) & H(l,b)"),
        ("Ex3.4-C-Eb|Hlb", "E(b) | H(l,b)"),
    ] {
        b.add(id, &format!("C({g}) over {{(D0, D1)}}"), c(&single_d, g), Some("1"), "1", None);
    }
    b.add("Ex3.4-C-negCs", "C(~C(s)) over the deletion update", c(&single_dp, "~C(s)"), Some("1"), "1", None);
    b.add("Ex3.4-C-negHsa", "C(~H(s,a)) over the deletion update", c(&single_dp, "~H(s,a)"), Some("3"), "1", Some("PD-5"));
    b.add(
        "Ex3.4-C-negCs&negHsa",
        "C(~C(s) & ~H(s,a)) over the deletion update",
        c(&single_dp, "~C(s) & ~H(s,a)"),
        Some("3"),
        "1",
        Some("PD-5"),
    );
    b.add("Ex3.4-C-s=a", "C(s = a) over the deletion update", c(&single_dp, "s = a"), Some("0"), "1", Some("PD-1"));
    b.add(
        "Ex3.4-C-negCs&s=a",
        "C(~C(s) & s = a) over the deletion update",
        c(&single_dp, "~C(s) & s = a"),
        Some("0"),
        "1",
        Some("PD-1"),
    );

    let first_support = [f("E(a)"), f("exists x E(x)")];
    let relevant_first = {
        let rel = relevant_propositions(&u_d0, &first_support, cfg);
        let detail = entails(d0.theory(), &f("exists x E(x)"), cfg)
            .witness()
            .map(|w| format!("countermodel for exists x E(x): {}", structure_text(w)));
        Computed { value: set_text(&rel), caveats: Vec::new(), detail }
    };
    b.add(
        "Ex4.2-relevant-first",
        "relevant members of {E(a), exists x E(x)} in (D0)",
        Ok(relevant_first),
        Some("{E(a)}"),
        "{E(a), exists x E(x)}",
        Some("PD-2"),
    );
    let second_set = [f("forall x (C(x) -> ~E(x))"), f("C(b)"), f("C(b) -> ~E(b)"), f("~E(b)")];
    b.add(
        "Ex4.2-relevant-second",
        "relevant members of the four propositions in (D0, D1)",
        u_d.as_ref().map_err(|e| e.clone()).map(|u| Computed::plain(set_text(&relevant_propositions(u, &second_set, cfg)))),
        Some("{forall x (C(x) -> ~E(x)), C(b) -> ~E(b)}"),
        "{forall x (C(x) -> ~E(x)), C(b) -> ~E(b)}",
        None,
    );

    let r = |coll: &Loaded<UpdateCollection>, d: &Deduction| -> Result<Computed, String> {
        let coll = coll.as_ref().map_err(|e| e.clone())?;
        let res = relevancy(coll, d, cfg);
        let detail = res.chosen_update.map(|i| format!("update #{i}, relevant {{{}}}", res.relevant.join(", ")));
        Ok(Computed { value: res.value.to_string(), caveats: caveat_texts(&res.caveats), detail })
    };
    b.add("Ex4.5-R-first", "R(E(a), exists x E(x)) over {(D0), (D0, D1)}", r(&small, &first), Some("1"), "1", None);
    b.add("Ex4.5-R-second-small", "R of the second deduction over {(D0), (D0, D1)}", r(&small, &second), Some("0"), "0", None);
    b.add(
        "Ex4.5-R-second-big",
        "R of the second deduction once the four-step update is added",
        r(&big, &second),
        Some("2/3"),
        "2/3",
        None,
    );

    let i = |coll: &Loaded<UpdateCollection>, d: &Deduction| -> Result<Computed, String> {
        let coll = coll.as_ref().map_err(|e| e.clone())?;
        Ok(info(informativity(coll, d, cfg)))
    };
    b.add("Ex5.2-I-first", "I(E(a), exists x E(x)) over the three updates", i(&big, &first), Some("1"), "0", Some("PD-4"));
    b.add("Ex5.2-I-second", "I of the second deduction over the three updates", i(&big, &second), Some("8/3"), "8/3", None);

    let ip = |g: &Formula| -> Result<Computed, String> {
        let coll = big.as_ref().map_err(|e| e.clone())?;
        Ok(info(informativity_of_proposition(coll, g, cfg)))
    };
    for (id, g, v) in [
        ("Ex5.4-I-Ea", "E(a)", "0"),
        ("Ex5.4-I-existsE", "exists x E(x)", "0"),
        ("Ex5.4-I-Ea->existsE", "E(a) -> exists x E(x)", "0"),
        ("Ex5.4-I-noCityStreet", "forall x (C(x) -> ~E(x))", "0"),
        ("Ex5.4-I-Cb", "C(b)", "0"),
        ("Ex5.4-I-negEb", "~E(b)", "4"),
    ] {
        b.add(id, &format!("I({g}) over the three updates"), ip(&f(g)), Some(v), v, None);
    }
    let cond = associated_conditional(&second);
    b.add(
        "Ex5.4-I-conditional",
        "I of the associated conditional of the second deduction",
        ip(&cond),
        Some("0"),
        "0",
        None,
    );
    b.add(
        "Ex5.4-C-conditional",
        "C of the same conditional, which differs from its I",
        c(&big, &cond.to_string()),
        Some("0"),
        "1",
        Some("PD-3"),
    );

    finish(b)
}

fn finish(b: Builder) -> Report {
    let discrepancies = NOTES
        .iter()
        .map(|(id, note)| Discrepancy {
            id: id.to_string(),
            note: note.to_string(),
            entries: b
                .cases
                .iter()
                .filter(|c| c.discrepancy.as_deref() == Some(id))
                .map(|c| DiscrepancyEntry {
                    case: c.id.clone(),
                    paper: c.paper.clone().unwrap_or_default(),
                    derived: c.derived.clone(),
                    computed: c.computed.clone(),
                })
                .collect(),
        })
        .collect();
    let summary = Summary {
        cases: b.cases.len(),
        derived_matches: b.cases.iter().filter(|c| c.derived_match).count(),
        paper_matches: b.cases.iter().filter(|c| c.paper_match == Some(true)).count(),
        paper_mismatches: b.cases.iter().filter(|c| c.paper_match == Some(false)).count(),
        caveated: b.cases.iter().filter(|c| !c.caveats.is_empty()).count(),
        unknown: b.cases.iter().filter(|c| c.caveats.iter().any(|s| s.contains("unknown") || s.contains("assumed"))).count(),
    };
    Report { mode: b.mode, bound: b.bound, cases: b.cases, discrepancies, summary }
}
