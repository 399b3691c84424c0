//! Benchmark bi-objective solvers: max-min, ideal point, linear weighting.

use serde::{Deserialize, Serialize};

use crate::error::SolveError;
use crate::model::{MatchingScheme, Matrix};

use super::assignment::SideConstraint;
use super::{Assignment, FuzzyBounds, MatchingProblem, Method, Side, SolverConfig};

/// Bisection stops once the max-min level is known to this precision.
pub const MAXMIN_TOL: f64 = 1e-6;

/// Frontier step: the next point must improve `f2` by at least this much.
const FRONTIER_STEP: f64 = 1e-7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BenchmarkMethod {
    MaxMin,
    IdealPoint,
    LinearWeighted,
}

impl BenchmarkMethod {
    pub const ALL: [BenchmarkMethod; 3] = [
        BenchmarkMethod::MaxMin,
        BenchmarkMethod::IdealPoint,
        BenchmarkMethod::LinearWeighted,
    ];

    pub fn method(self) -> Method {
        match self {
            BenchmarkMethod::MaxMin => Method::MaxMin,
            BenchmarkMethod::IdealPoint => Method::IdealPoint,
            BenchmarkMethod::LinearWeighted => Method::LinearWeighted,
        }
    }
}

/// Coordinates in which the benchmark criteria are measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BenchmarkSpace {
    /// Raw objective values `(f1, f2)`; ideal point `(f1^U, f2^U)`.
    #[default]
    Objective,
    /// Memberships `(u1, u2)`; ideal point `(1, 1)`.
    Membership,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub method: Method,
    pub scheme: MatchingScheme,
    /// False only for a fairness loop that ended outside the interval.
    pub converged: bool,
}

/// Affine map `g = scale * f + offset` from objective to benchmark space.
#[derive(Debug, Clone, Copy)]
struct Axis {
    scale: f64,
    offset: f64,
}

impl Axis {
    fn new(space: BenchmarkSpace, bounds: &FuzzyBounds, side: Side) -> Self {
        match space {
            BenchmarkSpace::Objective => Axis {
                scale: 1.0,
                offset: 0.0,
            },
            BenchmarkSpace::Membership => {
                let span = bounds.span(side);
                if span > 0.0 {
                    Axis {
                        scale: 1.0 / span,
                        offset: -bounds.lower(side) / span,
                    }
                } else {
                    Axis {
                        scale: 0.0,
                        offset: 1.0,
                    }
                }
            }
        }
    }

    fn map(self, f: f64) -> f64 {
        self.scale * f + self.offset
    }

    /// `g >= t` as a bound on `f`; `None` when it always holds, `+inf` when never.
    fn floor(self, t: f64) -> Option<f64> {
        if self.scale > 0.0 {
            Some((t - self.offset) / self.scale)
        } else if self.offset >= t {
            None
        } else {
            Some(f64::INFINITY)
        }
    }
}

impl MatchingProblem {
    fn axes(&self, bounds: &FuzzyBounds, space: BenchmarkSpace) -> (Axis, Axis) {
        (
            Axis::new(space, bounds, Side::Shipper),
            Axis::new(space, bounds, Side::Carrier),
        )
    }

    fn combined(&self, k1: f64, k2: f64) -> Matrix {
        Matrix::from_fn(self.shippers(), self.carriers(), |i, j| {
            k1 * self.alpha().get(i, j) + k2 * self.beta_t().get(i, j)
        })
    }

    /// Nondominated `(f1, f2)` points, from largest `f1` to largest `f2`,
    /// by an epsilon-constraint sweep on `f2`.
    pub fn pareto_frontier(&self) -> Result<Vec<Assignment>, SolveError> {
        let mut points = Vec::new();
        let mut floor2: Option<f64> = None;
        loop {
            let mut constraints: Vec<SideConstraint> = floor2
                .map(|l| self.floor_constraint(Side::Carrier, l))
                .into_iter()
                .collect();
            let first = match self.solve_weighted(self.alpha(), &constraints) {
                Ok(a) => a,
                Err(SolveError::Infeasible) if !points.is_empty() => break,
                Err(e) => return Err(e),
            };
            constraints.push(self.floor_constraint(Side::Shipper, first.f1));
            let point = self.solve_weighted(self.beta_t(), &constraints)?;
            floor2 = Some(point.f2 + FRONTIER_STEP);
            points.push(point);
        }
        Ok(points)
    }

    fn max_min(&self, bounds: &FuzzyBounds, space: BenchmarkSpace) -> Result<Assignment, SolveError> {
        let (a1, a2) = self.axes(bounds, space);
        let sum_weights = self.combined(a1.scale, a2.scale);
        let attempt = |t: f64| -> Result<Option<Assignment>, SolveError> {
            let constraints: Vec<SideConstraint> = [
                a1.floor(t).map(|f| self.floor_constraint(Side::Shipper, f)),
                a2.floor(t).map(|f| self.floor_constraint(Side::Carrier, f)),
            ]
            .into_iter()
            .flatten()
            .collect();
            match self.solve_weighted(&sum_weights, &constraints) {
                Ok(a) => Ok(Some(a)),
                Err(SolveError::Infeasible) => Ok(None),
                Err(e) => Err(e),
            }
        };
        // Every matching reaches the lower bounds, so `lo` starts feasible.
        let mut lo = a1.map(bounds.f1l).min(a2.map(bounds.f2l));
        let mut best = attempt(lo)?.ok_or(SolveError::EmptyRegion)?;
        let mut hi = a1.map(bounds.f1u).min(a2.map(bounds.f2u));
        if let Some(a) = attempt(hi)? {
            return Ok(a);
        }
        while hi - lo > MAXMIN_TOL {
            let mid = 0.5 * (lo + hi);
            match attempt(mid)? {
                Some(a) => {
                    lo = mid;
                    best = a;
                }
                None => hi = mid,
            }
        }
        Ok(best)
    }

    fn ideal_point(
        &self,
        bounds: &FuzzyBounds,
        space: BenchmarkSpace,
    ) -> Result<Assignment, SolveError> {
        let (a1, a2) = self.axes(bounds, space);
        let (t1, t2) = (a1.map(bounds.f1u), a2.map(bounds.f2u));
        let mut best: Option<(f64, Assignment)> = None;
        for point in self.pareto_frontier()? {
            let d = (a1.map(point.f1) - t1).hypot(a2.map(point.f2) - t2);
            if best.as_ref().map_or(true, |(bd, _)| d < bd - super::SOLVER_TOL) {
                best = Some((d, point));
            }
        }
        best.map(|(_, a)| a).ok_or(SolveError::EmptyRegion)
    }

    fn linear_weighted(
        &self,
        bounds: &FuzzyBounds,
        space: BenchmarkSpace,
        lambda: [f64; 2],
    ) -> Result<Assignment, SolveError> {
        let (a1, a2) = self.axes(bounds, space);
        self.solve_weighted(&self.combined(lambda[0] * a1.scale, lambda[1] * a2.scale), &[])
    }

    pub fn benchmark_solve(
        &self,
        bounds: &FuzzyBounds,
        method: BenchmarkMethod,
        config: &SolverConfig,
    ) -> Result<MatchingScheme, SolveError> {
        config.validate()?;
        let space = config.benchmark_space;
        let found = match method {
            BenchmarkMethod::MaxMin => self.max_min(bounds, space)?,
            BenchmarkMethod::IdealPoint => self.ideal_point(bounds, space)?,
            BenchmarkMethod::LinearWeighted => self.linear_weighted(bounds, space, config.lambda)?,
        };
        Ok(self.scheme(found.pairs, bounds))
    }

    /// The proposed method followed by the three benchmarks.
    pub fn compare(
        &self,
        bounds: &FuzzyBounds,
        eta_interval: [f64; 2],
        config: &SolverConfig,
    ) -> Result<Vec<ComparisonRow>, SolveError> {
        let outcome = self.interactive_solve(bounds, eta_interval, config)?;
        let mut rows = vec![ComparisonRow {
            method: Method::FuzzyInteractive,
            scheme: outcome.scheme,
            converged: outcome.converged,
        }];
        for method in BenchmarkMethod::ALL {
            rows.push(ComparisonRow {
                method: method.method(),
                scheme: self.benchmark_solve(bounds, method, config)?,
                converged: true,
            });
        }
        Ok(rows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::FeasibilityMask;

    fn problem() -> MatchingProblem {
        let alpha = Matrix::from_rows(vec![vec![0.9, 0.1], vec![0.2, 0.8]]).unwrap();
        let beta = Matrix::from_rows(vec![vec![0.3, 0.9], vec![0.7, 0.4]]).unwrap();
        MatchingProblem::new(alpha, beta, FeasibilityMask::all(2, 2)).unwrap()
    }

    #[test]
    fn frontier_of_two_matchings() {
        // diagonal: f1 = 1.7, f2 = 0.7; anti-diagonal: f1 = 0.3, f2 = 1.6
        let p = problem();
        let front = p.pareto_frontier().unwrap();
        assert_eq!(front.len(), 2);
        assert_eq!(front[0].pairs, vec![(0, 0), (1, 1)]);
        assert_eq!(front[1].pairs, vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn single_pair_methods_agree() {
        let alpha = Matrix::from_rows(vec![vec![0.6]]).unwrap();
        let beta = Matrix::from_rows(vec![vec![0.4]]).unwrap();
        let p = MatchingProblem::new(alpha, beta, FeasibilityMask::all(1, 1)).unwrap();
        let bounds = p.bounds(0.2).unwrap();
        let cfg = SolverConfig::default();
        let rows = p.compare(&bounds, [0.75, 1.0], &cfg).unwrap();
        for row in &rows {
            assert_eq!(row.scheme.pairs, vec![(0, 0)]);
        }
    }

    #[test]
    fn membership_space_changes_the_linear_choice() {
        let p = problem();
        let bounds = p.bounds(0.2).unwrap();
        let mut cfg = SolverConfig::default();
        let obj = p.benchmark_solve(&bounds, BenchmarkMethod::LinearWeighted, &cfg).unwrap();
        // f1 + f2: 2.4 vs 1.9
        assert_eq!(obj.pairs, vec![(0, 0), (1, 1)]);
        cfg.benchmark_space = BenchmarkSpace::Membership;
        let mem = p.benchmark_solve(&bounds, BenchmarkMethod::LinearWeighted, &cfg).unwrap();
        // u1 + u2 = 1 for both matchings; tie goes to the smaller pair list
        assert_eq!(mem.pairs, vec![(0, 0), (1, 1)]);
    }

    #[test]
    fn max_min_prefers_balanced_point() {
        let alpha = Matrix::from_rows(vec![vec![1.0, 0.5], vec![0.5, 1.0]]).unwrap();
        let beta = Matrix::from_rows(vec![vec![0.1, 0.5], vec![0.5, 0.1]]).unwrap();
        let p = MatchingProblem::new(alpha, beta, FeasibilityMask::all(2, 2)).unwrap();
        let bounds = p.bounds(0.2).unwrap();
        let s = p
            .benchmark_solve(&bounds, BenchmarkMethod::MaxMin, &SolverConfig::default())
            .unwrap();
        // diagonal (2.0, 0.2) vs anti-diagonal (1.0, 1.0)
        assert_eq!(s.pairs, vec![(0, 1), (1, 0)]);
    }
}
