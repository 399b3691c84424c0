//! Fairness-aware bilateral vehicle-cargo matching and the shipper-carrier-platform
//! evolutionary game.
//!
//! The matching side turns per-indicator satisfaction into two objectives
//! (shipper and carrier satisfaction), solves the bi-objective 0-1 assignment
//! exactly, and picks a scheme whose shipper/carrier satisfaction ratio lies in
//! a platform-chosen interval. The game side simulates whether such schemes get
//! accepted.

pub mod error;
pub mod evogame;
pub mod matcher;
pub mod model;
pub mod rsdat;
pub mod satisfaction;
pub mod scenarios;

pub use error::{IoError, SatisfactionError, SolveError, ValidationError};
pub use evogame::{GameParams, GameState, Vertex};
pub use matcher::{
    Assignment, BenchmarkMethod, BenchmarkSpace, FuzzyBounds, InteractiveOutcome, MatchingProblem,
    Method, Side, SolverConfig,
};
pub use model::{
    load_instance, write_instance, write_scheme, FeasibilityMask, IFNumber, MatchingInstance,
    MatchingScheme, Matrix, Pair,
};
pub use satisfaction::SatisfactionOptions;
