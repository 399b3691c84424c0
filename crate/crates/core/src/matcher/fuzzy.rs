//! Objective bounds and the membership / non-membership degrees built on them.

use serde::Serialize;

use crate::error::SolveError;
use crate::model::{FeasibilityMask, Matrix};

use super::assignment::{solve_linear, SearchOptions};

/// Objective values within this distance of `f^UL` count as reaching it.
pub const THRESHOLD_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FuzzyBounds {
    pub f1l: f64,
    pub f1u: f64,
    pub f2l: f64,
    pub f2u: f64,
    pub f1ul: f64,
    pub f2ul: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Shipper,
    Carrier,
}

impl Side {
    pub fn index(self) -> u8 {
        match self {
            Side::Shipper => 1,
            Side::Carrier => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Side::Shipper => "shipper",
            Side::Carrier => "carrier",
        }
    }
}

/// `fU - gamma (fU - fL)`.
pub fn upper_limit(lower: f64, upper: f64, gamma: f64) -> f64 {
    upper - gamma * (upper - lower)
}

impl FuzzyBounds {
    pub fn from_extremes(f1l: f64, f1u: f64, f2l: f64, f2u: f64, gamma: f64) -> Self {
        Self {
            f1l,
            f1u,
            f2l,
            f2u,
            f1ul: upper_limit(f1l, f1u, gamma),
            f2ul: upper_limit(f2l, f2u, gamma),
        }
    }

    pub fn lower(&self, side: Side) -> f64 {
        match side {
            Side::Shipper => self.f1l,
            Side::Carrier => self.f2l,
        }
    }

    pub fn upper(&self, side: Side) -> f64 {
        match side {
            Side::Shipper => self.f1u,
            Side::Carrier => self.f2u,
        }
    }

    pub fn upper_limit(&self, side: Side) -> f64 {
        match side {
            Side::Shipper => self.f1ul,
            Side::Carrier => self.f2ul,
        }
    }

    pub fn span(&self, side: Side) -> f64 {
        self.upper(side) - self.lower(side)
    }

    /// Copy with one side's `f^UL` replaced.
    pub fn with_upper_limit(mut self, side: Side, value: f64) -> Self {
        match side {
            Side::Shipper => self.f1ul = value,
            Side::Carrier => self.f2ul = value,
        }
        self
    }

    /// Copy with one side's `f^UL` recomputed for a different gamma.
    pub fn with_gamma(self, side: Side, gamma: f64) -> Self {
        let ul = upper_limit(self.lower(side), self.upper(side), gamma);
        self.with_upper_limit(side, ul)
    }
}

/// Extremes of both objectives over the admissible matchings, then the two UL limits.
pub fn compute_bounds(
    alpha: &Matrix,
    beta: &Matrix,
    feasible: &FeasibilityMask,
    gamma: f64,
    opts: SearchOptions,
) -> Result<FuzzyBounds, SolveError> {
    let beta_t = beta.transpose();
    let extreme = |w: &Matrix, sign: f64| -> Result<f64, SolveError> {
        let sol = solve_linear(&w.scaled(sign), &[], feasible, opts)
            .map_err(|_| SolveError::EmptyRegion)?;
        Ok(super::assignment::pair_sum(w, &sol.pairs))
    };
    let f1u = extreme(alpha, 1.0)?;
    let f1l = extreme(alpha, -1.0)?;
    let f2u = extreme(&beta_t, 1.0)?;
    let f2l = extreme(&beta_t, -1.0)?;
    Ok(FuzzyBounds::from_extremes(f1l, f1u, f2l, f2u, gamma))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Membership {
    pub u: f64,
    pub v: f64,
    pub s: f64,
}

/// Membership `u`, non-membership `v` and satisfaction `s = u - v` of objective value `f`.
pub fn membership(f: f64, bounds: &FuzzyBounds, side: Side) -> Membership {
    let (lo, hi, ul) = (bounds.lower(side), bounds.upper(side), bounds.upper_limit(side));
    if hi == lo {
        return Membership { u: 1.0, v: 0.0, s: 1.0 };
    }
    let u = ((f - lo) / (hi - lo)).clamp(0.0, 1.0);
    let v = if f >= ul - THRESHOLD_TOL {
        0.0
    } else if f <= lo {
        1.0
    } else {
        ((ul - f) / (ul - lo)).clamp(0.0, 1.0)
    };
    Membership { u, v, s: u - v }
}
