//! Bi-objective matching: exact assignment, fuzzy reformulation, the
//! interactive fairness loop, gamma sensitivity and benchmark solvers.

pub mod assignment;
pub mod benchmark;
pub mod fuzzy;
pub mod sweep;

use serde::{Deserialize, Serialize};

use crate::error::{SolveError, ValidationError};
use crate::model::{FeasibilityMask, MatchingInstance, MatchingScheme, Matrix, Pair};
use crate::satisfaction::{aggregate, feasibility_screen, SatisfactionOptions};

pub use assignment::{
    max_cardinality, solve_linear, Backend, Coverage, SearchOptions, SideConstraint, Solution,
    SOLVER_TOL,
};
pub use benchmark::{BenchmarkMethod, BenchmarkSpace, ComparisonRow};
pub use fuzzy::{compute_bounds, membership, FuzzyBounds, Membership, Side};
pub use sweep::SweepRow;

/// Solving method selectable from the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    FuzzyInteractive,
    MaxMin,
    IdealPoint,
    LinearWeighted,
}

impl Method {
    pub fn label(self) -> &'static str {
        match self {
            Method::FuzzyInteractive => "proposed",
            Method::MaxMin => "max-min",
            Method::IdealPoint => "ideal-point",
            Method::LinearWeighted => "linear-weighted",
        }
    }

    pub fn benchmark(self) -> Option<BenchmarkMethod> {
        match self {
            Method::FuzzyInteractive => None,
            Method::MaxMin => Some(BenchmarkMethod::MaxMin),
            Method::IdealPoint => Some(BenchmarkMethod::IdealPoint),
            Method::LinearWeighted => Some(BenchmarkMethod::LinearWeighted),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub method: Method,
    /// Raise applied to a membership floor each time the fairness test fails.
    pub theta_step: f64,
    /// Upper limit on LP3 solves inside the fairness loop.
    pub max_iterations: usize,
    /// `(lambda1, lambda2)` for the linear weighted benchmark.
    pub lambda: [f64; 2],
    pub benchmark_space: BenchmarkSpace,
    pub search: SearchOptions,
    /// Decimals kept on the fixed side's `f^UL` during a gamma sweep; `None` keeps it exact.
    pub reference_decimals: Option<u32>,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            method: Method::FuzzyInteractive,
            theta_step: 0.02,
            max_iterations: 50,
            lambda: [0.5, 0.5],
            benchmark_space: BenchmarkSpace::Objective,
            search: SearchOptions::default(),
            reference_decimals: Some(2),
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<(), ValidationError> {
        if !(self.theta_step > 0.0) {
            return Err(ValidationError::new("theta_step", "must be positive"));
        }
        if self.max_iterations == 0 {
            return Err(ValidationError::new("max_iterations", "must be at least 1"));
        }
        let [l1, l2] = self.lambda;
        if l1 < 0.0 || l2 < 0.0 || (l1 + l2 - 1.0).abs() > 1e-9 {
            return Err(ValidationError::new(
                "lambda",
                format!("({l1}, {l2}) must be non-negative and sum to 1"),
            ));
        }
        Ok(())
    }
}

/// Raw solver output: pairs with both objective values.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    pub pairs: Vec<Pair>,
    pub f1: f64,
    pub f2: f64,
}

/// `u_h >= theta` added by the fairness loop.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MembershipFloor {
    pub side: Side,
    pub theta: f64,
}

/// One LP3 solve inside the fairness loop.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub iteration: usize,
    /// Floors in force for this solve.
    pub floors: Vec<MembershipFloor>,
    pub scheme: Option<MatchingScheme>,
    /// `u1 / u2` tested against the fairness interval.
    pub ratio: Option<f64>,
    pub error: Option<SolveError>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InteractiveOutcome {
    /// Accepted scheme, or the one closest to the interval when the loop failed.
    pub scheme: MatchingScheme,
    pub converged: bool,
    pub iterations: Vec<IterationRecord>,
}

/// Satisfaction matrices and admissible pairs of one instance.
#[derive(Debug, Clone, PartialEq)]
pub struct MatchingProblem {
    alpha: Matrix,
    beta: Matrix,
    beta_t: Matrix,
    feasible: FeasibilityMask,
    pub search: SearchOptions,
}

/// Ratio the fairness loop tests; `u2 = 0` maps to `+inf` (or 1 when both vanish).
fn fairness_ratio(u1: f64, u2: f64) -> f64 {
    if u2 > 0.0 {
        u1 / u2
    } else if u1 > 0.0 {
        f64::INFINITY
    } else {
        1.0
    }
}

fn interval_violation(x: f64, [lo, hi]: [f64; 2]) -> f64 {
    if x < lo {
        lo - x
    } else if x > hi {
        x - hi
    } else {
        0.0
    }
}

impl MatchingProblem {
    /// `alpha` is m x n (shipper to carrier), `beta` is n x m (carrier to shipper).
    pub fn new(alpha: Matrix, beta: Matrix, feasible: FeasibilityMask) -> Result<Self, ValidationError> {
        let (m, n) = (alpha.rows(), alpha.cols());
        if beta.rows() != n || beta.cols() != m {
            return Err(ValidationError::new(
                "beta",
                format!("is {}x{}, expected {n}x{m}", beta.rows(), beta.cols()),
            ));
        }
        if feasible.rows() != m || feasible.cols() != n {
            return Err(ValidationError::new(
                "feasible",
                format!("is {}x{}, expected {m}x{n}", feasible.rows(), feasible.cols()),
            ));
        }
        let beta_t = beta.transpose();
        Ok(Self {
            alpha,
            beta,
            beta_t,
            feasible,
            search: SearchOptions::default(),
        })
    }

    pub fn with_search(mut self, search: SearchOptions) -> Self {
        self.search = search;
        self
    }

    /// Aggregates satisfaction (unless supplied) and screens admissible pairs.
    pub fn from_instance(
        inst: &MatchingInstance,
        opts: SatisfactionOptions,
    ) -> Result<Self, crate::error::SatisfactionError> {
        let (alpha, beta) = aggregate(inst, opts)?;
        let feasible = feasibility_screen(inst, opts)?;
        Self::new(alpha, beta, feasible).map_err(crate::error::SatisfactionError::Missing)
    }

    pub fn alpha(&self) -> &Matrix {
        &self.alpha
    }

    pub fn beta(&self) -> &Matrix {
        &self.beta
    }

    /// `beta` transposed to shipper x carrier layout.
    pub fn beta_t(&self) -> &Matrix {
        &self.beta_t
    }

    pub fn feasible(&self) -> &FeasibilityMask {
        &self.feasible
    }

    pub fn shippers(&self) -> usize {
        self.alpha.rows()
    }

    pub fn carriers(&self) -> usize {
        self.alpha.cols()
    }

    pub(crate) fn objective(&self, side: Side) -> &Matrix {
        match side {
            Side::Shipper => &self.alpha,
            Side::Carrier => &self.beta_t,
        }
    }

    pub fn objectives(&self, pairs: &[Pair]) -> (f64, f64) {
        (
            assignment::pair_sum(&self.alpha, pairs),
            assignment::pair_sum(&self.beta_t, pairs),
        )
    }

    pub(crate) fn floor_constraint(&self, side: Side, rhs: f64) -> SideConstraint {
        SideConstraint {
            coef: self.objective(side).clone(),
            rhs,
        }
    }

    pub(crate) fn solve_weighted(
        &self,
        weights: &Matrix,
        constraints: &[SideConstraint],
    ) -> Result<Assignment, SolveError> {
        let sol = solve_linear(weights, constraints, &self.feasible, self.search)?;
        let (f1, f2) = self.objectives(&sol.pairs);
        Ok(Assignment {
            pairs: sol.pairs,
            f1,
            f2,
        })
    }

    /// Exact maximizer of `c1 f1 + c2 f2`, optionally with `f1 >= L1` and `f2 >= L2`.
    pub fn solve_assignment(
        &self,
        c1: f64,
        c2: f64,
        lower_bounds: Option<(f64, f64)>,
    ) -> Result<Assignment, SolveError> {
        let weights = Matrix::from_fn(self.shippers(), self.carriers(), |i, j| {
            c1 * self.alpha.get(i, j) + c2 * self.beta_t.get(i, j)
        });
        let constraints: Vec<SideConstraint> = match lower_bounds {
            Some((l1, l2)) => vec![
                self.floor_constraint(Side::Shipper, l1),
                self.floor_constraint(Side::Carrier, l2),
            ],
            None => Vec::new(),
        };
        self.solve_weighted(&weights, &constraints)
    }

    pub fn bounds(&self, gamma: f64) -> Result<FuzzyBounds, SolveError> {
        compute_bounds(&self.alpha, &self.beta, &self.feasible, gamma, self.search)
    }

    /// Annotates a pair list with objective values and fuzzy satisfactions.
    pub fn scheme(&self, pairs: Vec<Pair>, bounds: &FuzzyBounds) -> MatchingScheme {
        let (f1, f2) = self.objectives(&pairs);
        let m1 = membership(f1, bounds, Side::Shipper);
        let m2 = membership(f2, bounds, Side::Carrier);
        MatchingScheme {
            pairs,
            f1,
            f2,
            u1: m1.u,
            v1: m1.v,
            s1: m1.s,
            u2: m2.u,
            v2: m2.v,
            s2: m2.s,
            eta: (m2.s != 0.0).then(|| m1.s / m2.s),
        }
    }

    /// Weights whose sum over a matching is `u1 + u2` up to a constant.
    fn lp3_weights(&self, bounds: &FuzzyBounds) -> Matrix {
        let k = |side: Side| {
            let span = bounds.span(side);
            if span > 0.0 {
                1.0 / span
            } else {
                0.0
            }
        };
        let (k1, k2) = (k(Side::Shipper), k(Side::Carrier));
        Matrix::from_fn(self.shippers(), self.carriers(), |i, j| {
            k1 * self.alpha.get(i, j) + k2 * self.beta_t.get(i, j)
        })
    }

    /// Maximizes `u1 + u2` subject to `f_h >= f_h^UL`.
    pub fn solve_lp3(&self, bounds: &FuzzyBounds) -> Result<MatchingScheme, SolveError> {
        self.solve_lp3_with(bounds, &[])
    }

    /// LP3 with additional membership floors `u_h >= theta`.
    pub fn solve_lp3_with(
        &self,
        bounds: &FuzzyBounds,
        floors: &[MembershipFloor],
    ) -> Result<MatchingScheme, SolveError> {
        let mut constraints = vec![
            self.floor_constraint(Side::Shipper, bounds.f1ul),
            self.floor_constraint(Side::Carrier, bounds.f2ul),
        ];
        let mut extra = false;
        for floor in floors {
            let span = bounds.span(floor.side);
            let rhs = if span > 0.0 {
                bounds.lower(floor.side) + floor.theta * span
            } else if floor.theta <= 1.0 {
                continue;
            } else {
                f64::INFINITY
            };
            constraints.push(self.floor_constraint(floor.side, rhs));
            extra = true;
        }
        let sol = match self.solve_weighted(&self.lp3_weights(bounds), &constraints) {
            Ok(sol) => sol,
            Err(SolveError::Infeasible) if !extra => {
                return Err(SolveError::InfeasibleThresholds {
                    f1_ul: bounds.f1ul,
                    f2_ul: bounds.f2ul,
                })
            }
            Err(e) => return Err(e),
        };
        let scheme = self.scheme(sol.pairs, bounds);
        assert!(
            scheme.v1 == 0.0 && scheme.v2 == 0.0,
            "LP3 optimum must carry zero non-membership on both sides: {scheme}"
        );
        Ok(scheme)
    }

    /// Fairness loop: re-solve LP3 with a raised membership floor until
    /// `u1 / u2` lies inside `eta_interval`.
    pub fn interactive_solve(
        &self,
        bounds: &FuzzyBounds,
        eta_interval: [f64; 2],
        config: &SolverConfig,
    ) -> Result<InteractiveOutcome, SolveError> {
        config.validate()?;
        let mut floors: Vec<MembershipFloor> = Vec::new();
        let mut iterations = Vec::new();
        let mut best: Option<(f64, MatchingScheme)> = None;
        for iteration in 1..=config.max_iterations {
            let scheme = match self.solve_lp3_with(bounds, &floors) {
                Ok(s) => s,
                Err(e) => {
                    if best.is_none() {
                        return Err(e);
                    }
                    iterations.push(IterationRecord {
                        iteration,
                        floors: floors.clone(),
                        scheme: None,
                        ratio: None,
                        error: Some(e),
                    });
                    break;
                }
            };
            let ratio = fairness_ratio(scheme.u1, scheme.u2);
            let violation = interval_violation(ratio, eta_interval);
            iterations.push(IterationRecord {
                iteration,
                floors: floors.clone(),
                scheme: Some(scheme.clone()),
                ratio: Some(ratio),
                error: None,
            });
            if best.as_ref().map_or(true, |(v, _)| violation < *v) {
                best = Some((violation, scheme.clone()));
            }
            if violation == 0.0 {
                return Ok(InteractiveOutcome {
                    scheme,
                    converged: true,
                    iterations,
                });
            }
            floors.push(if ratio < eta_interval[0] {
                MembershipFloor {
                    side: Side::Shipper,
                    theta: scheme.u1 + config.theta_step,
                }
            } else {
                MembershipFloor {
                    side: Side::Carrier,
                    theta: scheme.u2 + config.theta_step,
                }
            });
        }
        let (_, scheme) = best.expect("first iteration either solves or returns");
        Ok(InteractiveOutcome {
            scheme,
            converged: false,
            iterations,
        })
    }
}
