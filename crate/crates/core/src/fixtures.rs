//! The paper's example objects for unit tests.

use std::sync::Arc;

use crate::database::{Database, Theory};
use crate::io::corpus;
use crate::ops::OpMode;
use crate::parser::parse_formula;
use crate::semantics::Structure;
use crate::syntax::Formula;
use crate::update::{Update, UpdateCollection};

pub fn d0() -> Database {
    corpus::base_database()
}

pub fn a0() -> Structure {
    d0().structure().clone()
}

pub fn theory() -> Theory {
    (**d0().theory()).clone()
}

/// Parses against the example signature; other symbols are allowed.
pub fn f(text: &str) -> Formula {
    parse_formula(text, d0().signature()).unwrap().formula
}

fn db(a: Structure) -> Database {
    Database::unchecked(a, Arc::new(theory()))
}

pub fn a1() -> Structure {
    corpus::structure(corpus::A1)
}
pub fn a2() -> Structure {
    corpus::structure(corpus::A2)
}
pub fn a_star() -> Structure {
    corpus::structure(corpus::A_STAR)
}
pub fn a3() -> Structure {
    corpus::structure(corpus::A3)
}
pub fn a4() -> Structure {
    corpus::structure(corpus::A4)
}
pub fn a1_prime() -> Structure {
    corpus::structure(corpus::A1_PRIME)
}
pub fn a2_prime() -> Structure {
    corpus::structure(corpus::A2_PRIME)
}
pub fn a3_prime() -> Structure {
    corpus::structure(corpus::A3_PRIME)
}

pub fn d1() -> Database {
    db(a1())
}
pub fn d2() -> Database {
    db(a2())
}
pub fn d1_prime() -> Database {
    db(a1_prime())
}
pub fn d2_prime() -> Database {
    db(a2_prime())
}

pub fn update_d0() -> Update {
    Update::singleton(d0())
}
pub fn update_d() -> Update {
    corpus::update(corpus::UPDATE_D, OpMode::Paper).unwrap()
}
pub fn update_d_prime() -> Update {
    corpus::update(corpus::UPDATE_DP, OpMode::Paper).unwrap()
}
pub fn update_d_double_prime() -> Update {
    corpus::update(corpus::UPDATE_DPP, OpMode::Paper).unwrap()
}

/// `(D0)` and `(D0, D1)`.
pub fn collection_small() -> UpdateCollection {
    UpdateCollection::new(vec![update_d0(), update_d()]).unwrap()
}

/// `(D0)`, `(D0, D1)` and the four-step update ending in A4.
pub fn collection_big() -> UpdateCollection {
    UpdateCollection::new(vec![update_d0(), update_d(), update_d_double_prime()]).unwrap()
}
