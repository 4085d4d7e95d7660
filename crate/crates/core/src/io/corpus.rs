//! The worked examples, bundled as files.

use crate::database::Database;
use crate::metrics::Deduction;
use crate::ops::OpMode;
use crate::semantics::Structure;
use crate::update::Update;

use super::IoError;

pub const EXAMPLE_2_2: &str = include_str!("../../corpus/example_2_2.fodb");
pub const A1: &str = include_str!("../../corpus/a1.fodb");
pub const A2: &str = include_str!("../../corpus/a2.fodb");
pub const A_STAR: &str = include_str!("../../corpus/a_star.fodb");
pub const A3: &str = include_str!("../../corpus/a3.fodb");
pub const A4: &str = include_str!("../../corpus/a4.fodb");
pub const A1_PRIME: &str = include_str!("../../corpus/a1_prime.fodb");
pub const A2_PRIME: &str = include_str!("../../corpus/a2_prime.fodb");
pub const A3_PRIME: &str = include_str!("../../corpus/a3_prime.fodb");
pub const UPDATE_D: &str = include_str!("../../corpus/update_D.ops");
pub const UPDATE_DP: &str = include_str!("../../corpus/update_Dp.ops");
pub const UPDATE_DPP: &str = include_str!("../../corpus/update_Dpp.ops");
pub const FIRST_DEDUCTION: &str = include_str!("../../corpus/first_deduction.ded");
pub const SECOND_DEDUCTION: &str = include_str!("../../corpus/second_deduction.ded");

/// The base database D0.
pub fn base_database() -> Database {
    super::parse_database(EXAMPLE_2_2).expect("bundled database is valid")
}

/// One of the bundled structure files.
pub fn structure(text: &str) -> Structure {
    super::parse_fodb(text).expect("bundled structure is valid").structure
}

/// A bundled script applied to D0.
pub fn update(script: &str, mode: OpMode) -> Result<Update, IoError> {
    super::script::parse_update(script, base_database(), mode)
}

pub fn deduction(text: &str) -> Deduction {
    super::parse_deduction(text, base_database().signature()).expect("bundled deduction is valid")
}
