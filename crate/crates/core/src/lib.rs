//! Finite first-order databases, structural updates, and exact measures of
//! informational complexity, relevancy and semantic informativity.

pub mod database;
pub mod entailment;
pub mod io;
pub mod lexer;
pub mod metrics;
pub mod ops;
pub mod parser;
pub mod semantics;
pub mod syntax;
pub mod update;

#[cfg(test)]
mod fixtures;

pub use database::{is_correct, make_database, Correctness, Database, DatabaseError, Theory};
pub use entailment::{entails, is_tautology, is_valid_deduction, BoundConfig, Verdict};
pub use metrics::{
    associated_conditional, complexity, complexity_of_set, informativity, informativity_of_proposition, relevancy,
    relevant_propositions, Deduction, MetricValue,
};
pub use ops::{apply, apply_deletion, apply_insertion, enumerate_successors, free_for, infer_operation, ElementRef, OpMode, Operation};
pub use parser::{parse_formula, parse_sentence, ParseError};
pub use semantics::{evaluate, models_theory, Structure};
pub use syntax::{free_variables, print_formula, symbols_of, Formula, Signature, Symbol, Term};
pub use update::{is_acceptable, is_satisfactory, norm, search_minimal_update, validate_update, Update, UpdateCollection};
