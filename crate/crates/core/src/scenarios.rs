//! Built-in inputs: the 8-shipper / 10-carrier case study and the two game arrays.

use crate::model::MatchingInstance;

pub use crate::evogame::GameParams;

/// Case-study instance in the documented JSON schema.
pub const CASE_STUDY_JSON: &str = include_str!("../data/case_study.json");

/// The case study: raw indicator tables plus the published satisfaction matrices,
/// `gamma = 0.2`, fairness interval `[0.75, 1]`.
pub fn case_study() -> MatchingInstance {
    let inst = MatchingInstance::from_json(CASE_STUDY_JSON).expect("bundled case study parses");
    inst.validate().expect("bundled case study is valid");
    inst
}

pub fn array1() -> GameParams {
    GameParams::array1()
}

pub fn array2() -> GameParams {
    GameParams::array2()
}
