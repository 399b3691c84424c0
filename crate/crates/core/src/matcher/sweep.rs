//! Gamma sensitivity: vary one side's dissatisfaction limit, hold the other.

use crate::error::SolveError;
use crate::model::MatchingScheme;

use super::{FuzzyBounds, MatchingProblem, Side, SolverConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub gamma: f64,
    pub side: Side,
    /// Thresholds used for this LP3 solve.
    pub f1ul: f64,
    pub f2ul: f64,
    pub scheme: Option<MatchingScheme>,
    /// Whether `u1 / u2` of the LP3 optimum lies inside the fairness interval.
    pub fair: Option<bool>,
    pub error: Option<SolveError>,
}

impl SweepRow {
    /// `f^UL` of the side being varied.
    pub fn swept_limit(&self) -> f64 {
        match self.side {
            Side::Shipper => self.f1ul,
            Side::Carrier => self.f2ul,
        }
    }
}

fn round_to(x: f64, decimals: u32) -> f64 {
    let k = 10f64.powi(decimals as i32);
    (x * k).round() / k
}

impl MatchingProblem {
    /// One LP3 solve per gamma. The varied side's `f^UL` is recomputed exactly;
    /// the other side keeps its value from `reference`, rounded to
    /// `config.reference_decimals`.
    pub fn gamma_sweep(
        &self,
        reference: &FuzzyBounds,
        gammas: &[f64],
        side: Side,
        eta_interval: [f64; 2],
        config: &SolverConfig,
    ) -> Vec<SweepRow> {
        let other = match side {
            Side::Shipper => Side::Carrier,
            Side::Carrier => Side::Shipper,
        };
        let fixed = match config.reference_decimals {
            Some(d) => round_to(reference.upper_limit(other), d),
            None => reference.upper_limit(other),
        };
        gammas
            .iter()
            .map(|&gamma| {
                let bounds = reference
                    .with_upper_limit(other, fixed)
                    .with_gamma(side, gamma);
                let (scheme, fair, error) = match self.solve_lp3(&bounds) {
                    Ok(s) => {
                        let ratio = super::fairness_ratio(s.u1, s.u2);
                        let fair = super::interval_violation(ratio, eta_interval) == 0.0;
                        (Some(s), Some(fair), None)
                    }
                    Err(e) => (None, None, Some(e)),
                };
                SweepRow {
                    gamma,
                    side,
                    f1ul: bounds.f1ul,
                    f2ul: bounds.f2ul,
                    scheme,
                    fair,
                    error,
                }
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding() {
        assert_eq!(round_to(6.952, 2), 6.95);
        assert_eq!(round_to(6.612, 2), 6.61);
        assert_eq!(round_to(6.612, 3), 6.612);
    }
}
